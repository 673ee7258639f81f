#ifndef STRATDOM_H
#define STRATDOM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SdStatus {
  SD_STATUS_OK = 0,
  /**
   * The action is not strictly dominated; the report is still produced.
   */
  SD_STATUS_NOT_DOMINATED = 1,
  SD_STATUS_INVALID_INPUT = 2,
  SD_STATUS_NULL_POINTER = 3,
  SD_STATUS_INTERNAL = 4,
  SD_STATUS_PANIC = 5,
} SdStatus;

/**
 * A parsed game together with the bytes it was read from, so reports
 * carry the same input digest as the command-line tool.
 */
typedef struct SdGame SdGame;

/**
 * Message for the most recent failure on this thread, or null. Valid until
 * the next failing call on the same thread.
 */
const char *sd_last_error(void);

/**
 * Parses a NUL-terminated JSON game. On success `*out` owns a new handle.
 *
 * # Safety
 * `json` must be null or a valid C string; `out` must be null or writable.
 */
enum SdStatus sd_game_from_json(const char *json, struct SdGame **out);

/**
 * # Safety
 * `game` must be null or a handle from `sd_game_from_json` not yet freed.
 */
void sd_game_free(struct SdGame *game);

/**
 * Number of actions of `player` (1 = row, 2 = column).
 *
 * # Safety
 * `game` must be a live handle or null; `out` writable or null.
 */
enum SdStatus sd_game_num_actions(const struct SdGame *game, uint8_t player_number, size_t *out);

/**
 * Index of the action called `name`, for use with `sd_dominate_json`.
 *
 * # Safety
 * `game` must be a live handle or null; `name` a C string or null; `out`
 * writable or null.
 */
enum SdStatus sd_game_action_index(const struct SdGame *game,
                                   uint8_t player_number,
                                   const char *name,
                                   size_t *out);

/**
 * Full analysis report, identical to `stratdom analyze`.
 *
 * # Safety
 * `game` must be a live handle or null; `out` writable or null.
 */
enum SdStatus sd_analyze_json(const struct SdGame *game, char **out);

/**
 * Elimination trace, identical to `stratdom iesds`.
 *
 * # Safety
 * `game` must be a live handle or null; `out` writable or null.
 */
enum SdStatus sd_iesds_json(const struct SdGame *game, char **out);

/**
 * Best-response evidence for every action, identical to `stratdom rationalize`.
 *
 * # Safety
 * `game` must be a live handle or null; `out` writable or null.
 */
enum SdStatus sd_rationalize_json(const struct SdGame *game, char **out);

/**
 * Dominance verdict for one action. Returns `SD_STATUS_OK` with a
 * certificate when dominated and `SD_STATUS_NOT_DOMINATED` otherwise; the
 * report is written in both cases.
 *
 * # Safety
 * `game` must be a live handle or null; `out` writable or null.
 */
enum SdStatus sd_dominate_json(const struct SdGame *game,
                               uint8_t player_number,
                               size_t action,
                               char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void sd_string_free(char *s);

#endif /* STRATDOM_H */
