#ifndef PLANEDRAW_H
#define PLANEDRAW_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of a call.
 */
typedef enum PlanedrawStatus {
  PLANEDRAW_STATUS_OK = 0,
  /**
   * The drawing does not realize the graph.
   */
  PLANEDRAW_STATUS_VERIFY_FAILED = 1,
  PLANEDRAW_STATUS_NULL_ARGUMENT = 2,
  PLANEDRAW_STATUS_INVALID_UTF8 = 3,
  PLANEDRAW_STATUS_PARSE = 4,
  PLANEDRAW_STATUS_STRUCTURE = 5,
  PLANEDRAW_STATUS_SIZE = 6,
  PLANEDRAW_STATUS_ARGUMENT = 7,
  PLANEDRAW_STATUS_PRECONDITION = 8,
  PLANEDRAW_STATUS_NOT_TRIANGULATION = 9,
  PLANEDRAW_STATUS_INVARIANT = 10,
  PLANEDRAW_STATUS_DEGENERATE = 11,
  PLANEDRAW_STATUS_KERNEL = 12,
  PLANEDRAW_STATUS_PANIC = 13,
} PlanedrawStatus;

typedef enum PlanedrawStrategy {
  PLANEDRAW_STRATEGY_MAIN = 0,
  PLANEDRAW_STRATEGY_FOOTNOTE = 1,
} PlanedrawStrategy;

typedef enum PlanedrawKernel {
  PLANEDRAW_KERNEL_EXACT = 0,
  PLANEDRAW_KERNEL_FLOAT = 1,
} PlanedrawKernel;

/**
 * Opaque drawing with exact coordinates.
 */
typedef struct PlanedrawDrawing PlanedrawDrawing;

/**
 * Opaque plane graph.
 */
typedef struct PlanedrawGraph PlanedrawGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failed call on this thread, or null if the
 * last call succeeded. Release with [`planedraw_string_free`].
 */
char *planedraw_last_error_message(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `text` must be null or a string returned by this library that has not
 * been freed yet.
 */
void planedraw_string_free(char *text);

/**
 * Parses a graph document. When the document has coordinates and
 * `out_drawing` is non-null, a drawing handle is stored there (otherwise
 * null is stored).
 *
 * # Safety
 * `text` must be a nul-terminated string; `out_graph` must be valid for a
 * write; `out_drawing` must be null or valid for a write.
 */
enum PlanedrawStatus planedraw_graph_parse(const char *text,
                                           struct PlanedrawGraph **out_graph,
                                           struct PlanedrawDrawing **out_drawing);

/**
 * Generates an instance of a named family (`triangle`, `k4`, `octahedron`,
 * `wheel`, `stacked`, `cycle`, `star`, `random`). `size` 0 means no size
 * parameter.
 *
 * # Safety
 * `family` must be a nul-terminated string and `out_graph` valid for a write.
 */
enum PlanedrawStatus planedraw_graph_generate(const char *family,
                                              size_t size,
                                              uint64_t seed,
                                              struct PlanedrawGraph **out_graph);

/**
 * # Safety
 * `graph` must be null or a handle from this library not freed yet.
 */
void planedraw_graph_free(struct PlanedrawGraph *graph);

/**
 * Number of vertices, or 0 for a null handle.
 *
 * # Safety
 * `graph` must be null or a live handle.
 */
size_t planedraw_graph_vertex_count(const struct PlanedrawGraph *graph);

/**
 * Number of edges, or 0 for a null handle.
 *
 * # Safety
 * `graph` must be null or a live handle.
 */
size_t planedraw_graph_edge_count(const struct PlanedrawGraph *graph);

/**
 * Canonical document text for the graph, with coordinates when `drawing`
 * is non-null.
 *
 * # Safety
 * `graph` must be a live handle, `drawing` null or a live handle, and
 * `out_text` valid for a write.
 */
enum PlanedrawStatus planedraw_graph_to_text(const struct PlanedrawGraph *graph,
                                             const struct PlanedrawDrawing *drawing,
                                             char **out_text);

/**
 * Computes a straight-line drawing. `tolerance` is used by the floating
 * kernel only. The result is fully verified before it is returned.
 *
 * # Safety
 * `graph` must be a live handle and `out_drawing` valid for a write.
 */
enum PlanedrawStatus planedraw_draw(const struct PlanedrawGraph *graph,
                                    enum PlanedrawStrategy strategy,
                                    enum PlanedrawKernel kernel,
                                    double tolerance,
                                    struct PlanedrawDrawing **out_drawing);

/**
 * # Safety
 * `drawing` must be null or a handle from this library not freed yet.
 */
void planedraw_drawing_free(struct PlanedrawDrawing *drawing);

/**
 * Certifies `drawing` against `graph` with exact arithmetic. Returns
 * `PLANEDRAW_STATUS_OK` on a pass and `PLANEDRAW_STATUS_VERIFY_FAILED` otherwise.
 * When `out_report` is non-null the JSON report `{passed, violations}` is
 * stored there.
 *
 * # Safety
 * `graph` and `drawing` must be live handles; `out_report` must be null or
 * valid for a write.
 */
enum PlanedrawStatus planedraw_verify(const struct PlanedrawGraph *graph,
                                      const struct PlanedrawDrawing *drawing,
                                      char **out_report);

/**
 * Nearest `double` values of a vertex's coordinates.
 *
 * # Safety
 * `drawing` must be a live handle; `out_x` and `out_y` valid for writes.
 */
enum PlanedrawStatus planedraw_drawing_point(const struct PlanedrawDrawing *drawing,
                                             size_t vertex,
                                             double *out_x,
                                             double *out_y);

/**
 * Exact coordinates of a vertex as `num/den` strings.
 *
 * # Safety
 * `drawing` must be a live handle; `out_x` and `out_y` valid for writes.
 */
enum PlanedrawStatus planedraw_drawing_point_exact(const struct PlanedrawDrawing *drawing,
                                                   size_t vertex,
                                                   char **out_x,
                                                   char **out_y);

/**
 * SVG rendering with default options; violating edges are highlighted.
 *
 * # Safety
 * `graph` and `drawing` must be live handles and `out_svg` valid for a write.
 */
enum PlanedrawStatus planedraw_svg(const struct PlanedrawGraph *graph,
                                   const struct PlanedrawDrawing *drawing,
                                   char **out_svg);

/**
 * Default relative tolerance of the floating kernel.
 */
double planedraw_default_tolerance(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PLANEDRAW_H */
