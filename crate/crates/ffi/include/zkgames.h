#ifndef ZKGAMES_H
#define ZKGAMES_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum ZkStatus {
  ZK_STATUS_OK = 0,
  ZK_STATUS_NULL_POINTER = 1,
  ZK_STATUS_INVALID_UTF8 = 2,
  ZK_STATUS_PARSE_ERROR = 3,
  ZK_STATUS_DOMAIN_ERROR = 4,
  ZK_STATUS_BUFFER_TOO_SMALL = 5,
  ZK_STATUS_PANIC = 6,
} ZkStatus;

typedef enum ZkStage {
  ZK_STAGE_NONE = 0,
  ZK_STAGE_S0 = 1,
  ZK_STAGE_P0 = 2,
  ZK_STAGE_V0 = 3,
} ZkStage;

typedef enum ZkFuzzyForm {
  ZK_FUZZY_FORM_NNE = 0,
  ZK_FUZZY_FORM_FNE = 1,
  ZK_FUZZY_FORM_FNNE = 2,
} ZkFuzzyForm;

typedef enum ZkInterpretation {
  ZK_INTERPRETATION_LITERAL = 0,
  ZK_INTERPRETATION_STRICT = 1,
} ZkInterpretation;

typedef struct ZkFuzzyGame ZkFuzzyGame;

typedef struct ZkGame ZkGame;

typedef struct ZkModel ZkModel;

typedef struct ZkAlternationVerdict {
  bool antecedent;
  bool lhs;
  bool rhs;
  bool whole;
} ZkAlternationVerdict;

typedef struct ZkSimulationConfig {
  double p_informed;
  double bluff_success;
  uint32_t k_max;
  uint64_t trials;
  uint64_t seed;
} ZkSimulationConfig;

/**
 * Message for the last failed call on this thread, or null. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *zk_last_error(void);

/**
 * `h_k` as the nearest double.
 *
 * # Safety
 * `out` must be valid for a write.
 */
enum ZkStatus zk_threshold_f64(uint32_t k, double *out);

/**
 * `h_k` exactly, as a NUL-terminated `"p/q"` string. `len_out` receives the
 * required size including the terminator.
 *
 * # Safety
 * `buf` must be valid for `capacity` bytes; `len_out` valid for a write.
 */
enum ZkStatus zk_threshold_string(uint32_t k, char *buf, size_t capacity, size_t *len_out);

/**
 * Whether `h_k >= 1 - epsilon`.
 *
 * # Safety
 * `out` must be valid for a write.
 */
enum ZkStatus zk_limit_satisfied(uint32_t k, double epsilon, bool *out);

/**
 * # Safety
 * `out` must be valid for a write.
 */
enum ZkStatus zk_eval_alternation(bool sx, bool ex, bool fx, struct ZkAlternationVerdict *out);

enum ZkStage zk_classify_state(bool sx, bool ex, bool fx);

/**
 * Build a model from a JSON model document.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` valid for a write.
 */
enum ZkStatus zk_model_from_json(const char *json, struct ZkModel **out);

/**
 * # Safety
 * `model` must come from [`zk_model_from_json`] and not be freed twice.
 */
void zk_model_free(struct ZkModel *model);

/**
 * Number of states, or 0 for a null handle.
 *
 * # Safety
 * `model` must be null or a live handle.
 */
size_t zk_model_num_states(const struct ZkModel *model);

/**
 * `K_agent(E)` over state indices.
 *
 * # Safety
 * `agent` must be a NUL-terminated string, `event` valid for `event_len`
 * reads, `out` valid for `capacity` writes, `len_out` valid for a write.
 */
enum ZkStatus zk_model_knows(const struct ZkModel *model,
                             const char *agent,
                             const size_t *event_states,
                             size_t event_len,
                             size_t *out,
                             size_t capacity,
                             size_t *len_out);

/**
 * Common knowledge of E among `agents`.
 *
 * # Safety
 * `agents` must hold `num_agents` NUL-terminated strings; buffers as for
 * [`zk_model_knows`].
 */
enum ZkStatus zk_model_common_knowledge(const struct ZkModel *model,
                                        const char *const *agents,
                                        size_t num_agents,
                                        const size_t *event_states,
                                        size_t event_len,
                                        size_t *out,
                                        size_t capacity,
                                        size_t *len_out);

/**
 * Build a game from a JSON game document.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` valid for a write.
 */
enum ZkStatus zk_game_from_json(const char *json, struct ZkGame **out);

/**
 * # Safety
 * `game` must come from [`zk_game_from_json`] and not be freed twice.
 */
void zk_game_free(struct ZkGame *game);

/**
 * Number of players, or 0 for a null handle.
 *
 * # Safety
 * `game` must be null or a live handle.
 */
size_t zk_game_num_players(const struct ZkGame *game);

/**
 * Pure equilibria as consecutive strategy-index tuples, one entry per
 * player. `len_out` counts indices, not profiles.
 *
 * # Safety
 * `out` valid for `capacity` writes; `len_out` valid for a write.
 */
enum ZkStatus zk_game_equilibria(const struct ZkGame *game,
                                 size_t *out,
                                 size_t capacity,
                                 size_t *len_out);

/**
 * # Safety
 * `out` must be valid for a write.
 */
enum ZkStatus zk_game_is_solvable(const struct ZkGame *game, bool *out);

/**
 * Build a fuzzy game from a JSON fuzzy document.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` valid for a write.
 */
enum ZkStatus zk_fuzzy_from_json(const char *json, struct ZkFuzzyGame **out);

/**
 * # Safety
 * `game` must come from [`zk_fuzzy_from_json`] and not be freed twice.
 */
void zk_fuzzy_free(struct ZkFuzzyGame *game);

/**
 * Qualifying cells as consecutive zero-based `(row, col)` pairs.
 * `len_out` counts indices (twice the number of cells).
 *
 * # Safety
 * `out` valid for `capacity` writes; `len_out` valid for a write.
 */
enum ZkStatus zk_fuzzy_find(const struct ZkFuzzyGame *game,
                            enum ZkFuzzyForm form,
                            enum ZkInterpretation interpretation,
                            size_t *out,
                            size_t capacity,
                            size_t *len_out);

/**
 * Empirical undetected fraction for `k = 2..=k_max`, NaN where no trial
 * drew an uninformed prover. `len_out` receives `k_max - 1`.
 *
 * # Safety
 * `config` valid for a read; `out` valid for `capacity` writes; `len_out`
 * valid for a write.
 */
enum ZkStatus zk_simulate(const struct ZkSimulationConfig *config,
                          double *out,
                          size_t capacity,
                          size_t *len_out);

#endif  /* ZKGAMES_H */
