#ifndef REVSYNTH_H
#define REVSYNTH_H

/* Generated by cbindgen from revsynth-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible call.
 */
typedef enum {
  /**
   * The call succeeded.
   */
  RsvOk = 0,
  /**
   * A required pointer argument was null.
   */
  RsvNullPointer = 1,
  /**
   * An argument was out of range (details via `rsv_last_error_message`).
   */
  RsvInvalidArgument = 2,
  /**
   * Netlist text did not parse (details via `rsv_last_error_message`).
   */
  RsvParseError = 3,
  /**
   * A string argument was not valid UTF-8.
   */
  RsvUtf8Error = 4,
} RsvStatus;

/**
 * Opaque netlist handle.
 */
typedef struct RsvNetlist RsvNetlist;

/**
 * Parameters of one evolutionary search run.
 */
typedef struct {
  /**
   * Parity arity (2..=16).
   */
  uint32_t k;
  uint32_t population_size;
  /**
   * Generation budget; one generation is `population_size` offspring.
   */
  uint32_t generations;
  /**
   * Fredkin genes per chromosome after the terminal prefix.
   */
  uint32_t code_len;
  double mutation_prob;
  double crossover_prob;
  double tournament_frac;
  uint64_t seed;
} RsvSearchConfig;

/**
 * Result summary of one search run.
 */
typedef struct {
  /**
   * True iff a zero-error circuit was found.
   */
  bool success;
  /**
   * Error count of the best expression (0 on success).
   */
  uint32_t best_fitness;
  /**
   * Generations consumed (0 if the initial population solved it).
   */
  uint32_t generations_used;
  /**
   * Gates in the extracted circuit; 0 when `success` is false.
   */
  uint32_t gate_count;
} RsvSearchOutcome;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the most recent failure on this thread. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *rsv_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *rsv_version(void);

/**
 * Search configuration prefilled with the general defaults (population
 * 1000, 50 generations, code length 10, mutation 0.2, crossover 0.9,
 * 1% tournament, seed 1).
 */
RsvSearchConfig rsv_search_config_default(uint32_t k);

/**
 * Run one seeded search. On success (`outcome.success`), `*netlist_out`
 * receives the extracted, parity-verified circuit (pass NULL to skip
 * it); otherwise `*netlist_out` is set to NULL.
 *
 * # Safety
 * `config` and `outcome` must be valid for reads/writes; `netlist_out`,
 * when non-null, must be valid for writes.
 */
RsvStatus rsv_evolve(const RsvSearchConfig *config,
                     RsvSearchOutcome *outcome,
                     RsvNetlist **netlist_out);

/**
 * Parse netlist text in the `revsynth-netlist v1` format into a new
 * handle.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string and `out` valid for
 * writes.
 */
RsvStatus rsv_netlist_parse(const char *text, RsvNetlist **out);

/**
 * Serialize a netlist to newly allocated text (release with
 * `rsv_string_free`).
 *
 * # Safety
 * `netlist` must be a live handle and `out` valid for writes.
 */
RsvStatus rsv_netlist_format(const RsvNetlist *netlist, char **out);

/**
 * Arity of the netlist's problem, or 0 for a null handle.
 *
 * # Safety
 * `netlist`, when non-null, must be a live handle.
 */
uint32_t rsv_netlist_arity(const RsvNetlist *netlist);

/**
 * Number of Fredkin gates, or 0 for a null handle.
 *
 * # Safety
 * `netlist`, when non-null, must be a live handle.
 */
uint32_t rsv_netlist_gate_count(const RsvNetlist *netlist);

/**
 * Largest number of gate argument slots fed by any single source, or 0
 * for a null handle.
 *
 * # Safety
 * `netlist`, when non-null, must be a live handle.
 */
uint32_t rsv_netlist_max_fanout(const RsvNetlist *netlist);

/**
 * Evaluate the netlist on one input assignment (`assignment_len` must
 * equal the arity); writes the output bit to `out`.
 *
 * # Safety
 * `netlist` must be a live handle, `assignment` valid for
 * `assignment_len` reads, and `out` valid for writes.
 */
RsvStatus rsv_netlist_simulate(const RsvNetlist *netlist,
                               const bool *assignment,
                               size_t assignment_len,
                               bool *out);

/**
 * Exhaustively check the netlist against even-k-parity; writes the
 * verdict to `out`.
 *
 * # Safety
 * `netlist` must be a live handle and `out` valid for writes.
 */
RsvStatus rsv_netlist_verify_parity(const RsvNetlist *netlist, bool *out);

/**
 * Release a netlist handle (null is ignored).
 *
 * # Safety
 * `netlist` must be null or a handle returned by this library, not yet
 * freed.
 */
void rsv_netlist_free(RsvNetlist *netlist);

/**
 * Release a string returned by this library (null is ignored).
 *
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void rsv_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* REVSYNTH_H */
