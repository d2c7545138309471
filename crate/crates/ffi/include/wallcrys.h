/* SPDX-License-Identifier: Apache-2.0 */

#ifndef WALLCRYS_H
#define WALLCRYS_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Which crystal model to generate; passed as `uint32_t`.
 */
typedef enum WallcrysGraphModel {
  WALLCRYS_GRAPH_MODEL_PATH = 0,
  WALLCRYS_GRAPH_MODEL_WALL = 1,
} WallcrysGraphModel;

/**
 * Result codes of every exported function.
 */
typedef enum WallcrysStatus {
  WALLCRYS_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  WALLCRYS_STATUS_NULL_ARGUMENT = 1,
  /**
   * A string argument was not valid UTF-8 or could not be parsed.
   */
  WALLCRYS_STATUS_PARSE = 2,
  /**
   * Unknown type, weight outside level 1, or an invalid wall.
   */
  WALLCRYS_STATUS_INVALID = 3,
  /**
   * The wall is not reduced, so it has no path.
   */
  WALLCRYS_STATUS_NOT_REDUCED = 4,
  /**
   * The operator is undefined on this element.
   */
  WALLCRYS_STATUS_UNDEFINED = 5,
  /**
   * Verification found a counterexample.
   */
  WALLCRYS_STATUS_COUNTEREXAMPLE = 6,
  /**
   * The node budget was exceeded.
   */
  WALLCRYS_STATUS_TRUNCATED = 7,
  /**
   * An internal error; the library state is unaffected.
   */
  WALLCRYS_STATUS_INTERNAL = 8,
} WallcrysStatus;

/**
 * A type and ground weight with both crystal models and the reading map.
 */
typedef struct WallcrysModel WallcrysModel;

/**
 * A reduced proper Young wall of one model.
 */
typedef struct WallcrysWall WallcrysWall;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failure on this thread, or an empty string.
 * The pointer stays valid until the next failing call on this thread.
 */
const char *wallcrys_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *wallcrys_version(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be null or a string returned by this library and not yet freed.
 */
void wallcrys_string_free(char *s);

/**
 * Creates a model for an affine type such as `"B3~1"` and the level-1
 * weight `Lambda_lambda`.
 *
 * # Safety
 * `ty` must be a NUL-terminated string and `out` a valid pointer.
 */
enum WallcrysStatus wallcrys_model_new(const char *ty, uint32_t lambda, struct WallcrysModel **out);

/**
 * Releases a model.
 *
 * # Safety
 * `model` must be null or a model handle not yet freed.
 */
void wallcrys_model_free(struct WallcrysModel *model);

/**
 * Size of the index set `{0, .., n}`.
 *
 * # Safety
 * `model` must be a valid model handle and `out` a valid pointer.
 */
enum WallcrysStatus wallcrys_model_num_indices(const struct WallcrysModel *model, uint32_t *out);

/**
 * The ground-state wall of a model.
 *
 * # Safety
 * `model` must be a valid model handle and `out` a valid pointer.
 */
enum WallcrysStatus wallcrys_wall_ground(const struct WallcrysModel *model,
                                         struct WallcrysWall **out);

/**
 * Parses a wall literal such as `"L0;counts=3,2f,1"` or `"3,2f,1"`.
 *
 * # Safety
 * `model` must be a valid model handle, `literal` a NUL-terminated string
 * and `out` a valid pointer.
 */
enum WallcrysStatus wallcrys_wall_parse(const struct WallcrysModel *model,
                                        const char *literal,
                                        struct WallcrysWall **out);

/**
 * Releases a wall.
 *
 * # Safety
 * `wall` must be null or a wall handle not yet freed.
 */
void wallcrys_wall_free(struct WallcrysWall *wall);

/**
 * Applies `e_i` when `raise` is true and `f_i` otherwise. Returns
 * `Undefined` when the operator gives no wall.
 *
 * # Safety
 * `model` and `wall` must be valid handles of the same model and `out` a
 * valid pointer.
 */
enum WallcrysStatus wallcrys_wall_apply(const struct WallcrysModel *model,
                                        const struct WallcrysWall *wall,
                                        uint32_t i,
                                        bool raise,
                                        struct WallcrysWall **out);

/**
 * `eps_i` and `phi_i` of a wall.
 *
 * # Safety
 * `model` and `wall` must be valid handles of the same model; `eps` and
 * `phi` must be valid pointers.
 */
enum WallcrysStatus wallcrys_wall_eps_phi(const struct WallcrysModel *model,
                                          const struct WallcrysWall *wall,
                                          uint32_t i,
                                          uint32_t *eps,
                                          uint32_t *phi);

/**
 * Whether the wall has no removable delta column.
 *
 * # Safety
 * `model` and `wall` must be valid handles of the same model and `out` a
 * valid pointer.
 */
enum WallcrysStatus wallcrys_wall_is_reduced(const struct WallcrysModel *model,
                                             const struct WallcrysWall *wall,
                                             bool *out);

/**
 * The wall literal, e.g. `"L0;counts=3,2f,1"`.
 *
 * # Safety
 * `model` and `wall` must be valid handles of the same model and `out` a
 * valid pointer.
 */
enum WallcrysStatus wallcrys_wall_literal(const struct WallcrysModel *model,
                                          const struct WallcrysWall *wall,
                                          char **out);

/**
 * Text diagram of the wall.
 *
 * # Safety
 * `model` and `wall` must be valid handles of the same model and `out` a
 * valid pointer.
 */
enum WallcrysStatus wallcrys_wall_ascii(const struct WallcrysModel *model,
                                        const struct WallcrysWall *wall,
                                        char **out);

/**
 * The path read from the wall, as entries `p(N-1) .. p(0)` separated by
 * spaces; the ground path is the empty string.
 *
 * # Safety
 * `model` and `wall` must be valid handles of the same model and `out` a
 * valid pointer.
 */
enum WallcrysStatus wallcrys_wall_read_path(const struct WallcrysModel *model,
                                            const struct WallcrysWall *wall,
                                            char **out);

/**
 * JSON crystal graph of one model (a [`WallcrysGraphModel`] value) to `depth`, capped at `max_nodes` nodes.
 * Returns `Truncated` together with the partial graph when the cap is hit.
 *
 * # Safety
 * `model` must be a valid model handle and `out` a valid pointer.
 */
enum WallcrysStatus wallcrys_graph_json(const struct WallcrysModel *model,
                                        uint32_t kind,
                                        uint32_t depth,
                                        uint64_t max_nodes,
                                        char **out);

/**
 * Verifies the wall-to-path correspondence to `depth` and writes the JSON
 * report. Returns `Counterexample` or `Truncated` when it does not pass;
 * the report is written in every case.
 *
 * # Safety
 * `model` must be a valid model handle and `report` a valid pointer.
 */
enum WallcrysStatus wallcrys_verify(const struct WallcrysModel *model,
                                    uint32_t depth,
                                    uint64_t max_nodes,
                                    char **report);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* WALLCRYS_H */
