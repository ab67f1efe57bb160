//! C ABI over `planedraw-core`.
//!
//! Graphs and drawings are opaque handles created by this library and
//! released with their `_free` function. Every fallible call returns a
//! [`PlanedrawStatus`]; on failure a description is kept per thread and can be
//! fetched with [`planedraw_last_error_message`]. Strings returned through out
//! parameters are owned by the caller and released with [`planedraw_string_free`].
//!
//! Drawings passed across the boundary always hold exact rational
//! coordinates; a floating-kernel drawing is converted losslessly.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use planedraw::geometry::{format_rational, Kernel};
use planedraw::io::generate::{generate, GeneratorSpec};
use planedraw::io::{emit_svg, parse_document, write_document, Document, SvgOptions};
use planedraw::layout::{draw_with, LayoutOptions};
use planedraw::{verify, Error, ExactDrawing, PlaneGraph, Strategy};

/// Result of a call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlanedrawStatus {
    Ok = 0,
    /// The drawing does not realize the graph.
    VerifyFailed = 1,
    NullArgument = 2,
    InvalidUtf8 = 3,
    Parse = 4,
    Structure = 5,
    Size = 6,
    Argument = 7,
    Precondition = 8,
    NotTriangulation = 9,
    Invariant = 10,
    Degenerate = 11,
    Kernel = 12,
    Panic = 13,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlanedrawStrategy {
    Main = 0,
    Footnote = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlanedrawKernel {
    Exact = 0,
    Float = 1,
}

/// Opaque plane graph.
pub struct PlanedrawGraph(PlaneGraph);

/// Opaque drawing with exact coordinates.
pub struct PlanedrawDrawing(ExactDrawing);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(error: &Error) -> PlanedrawStatus {
    match error {
        Error::Structure(_) => PlanedrawStatus::Structure,
        Error::Size(_) => PlanedrawStatus::Size,
        Error::Argument(_) => PlanedrawStatus::Argument,
        Error::Precondition(_) => PlanedrawStatus::Precondition,
        Error::NotTriangulation => PlanedrawStatus::NotTriangulation,
        Error::Invariant(_) => PlanedrawStatus::Invariant,
        Error::Degenerate(_) => PlanedrawStatus::Degenerate,
        Error::Kernel(_) => PlanedrawStatus::Kernel,
        Error::Parse { .. } => PlanedrawStatus::Parse,
    }
}

struct Failure(PlanedrawStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(PlanedrawStatus::NullArgument, format!("{what} is null"))
}

/// Runs `body`, recording any failure or panic as the thread's last error.
fn guard(body: impl FnOnce() -> Result<PlanedrawStatus, Failure>) -> PlanedrawStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(status)) => status,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            PlanedrawStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(text: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if text.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(text)
        .to_str()
        .map_err(|_| Failure(PlanedrawStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn graph_ref<'a>(graph: *const PlanedrawGraph) -> Result<&'a PlaneGraph, Failure> {
    graph.as_ref().map(|g| &g.0).ok_or_else(|| null("graph"))
}

unsafe fn drawing_ref<'a>(drawing: *const PlanedrawDrawing) -> Result<&'a ExactDrawing, Failure> {
    drawing.as_ref().map(|d| &d.0).ok_or_else(|| null("drawing"))
}

fn into_c_string(text: String) -> *mut c_char {
    CString::new(text.replace('\0', " ")).expect("no interior nul").into_raw()
}

/// Message describing the last failed call on this thread, or null if the
/// last call succeeded. Release with [`planedraw_string_free`].
#[no_mangle]
pub extern "C" fn planedraw_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |m| m.clone().into_raw()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `text` must be null or a string returned by this library that has not
/// been freed yet.
#[no_mangle]
pub unsafe extern "C" fn planedraw_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}

/// Parses a graph document. When the document has coordinates and
/// `out_drawing` is non-null, a drawing handle is stored there (otherwise
/// null is stored).
///
/// # Safety
/// `text` must be a nul-terminated string; `out_graph` must be valid for a
/// write; `out_drawing` must be null or valid for a write.
#[no_mangle]
pub unsafe extern "C" fn planedraw_graph_parse(
    text: *const c_char,
    out_graph: *mut *mut PlanedrawGraph,
    out_drawing: *mut *mut PlanedrawDrawing,
) -> PlanedrawStatus {
    guard(|| {
        let text = read_str(text, "text")?;
        if out_graph.is_null() {
            return Err(null("out_graph"));
        }
        let doc = parse_document(text)?;
        *out_graph = Box::into_raw(Box::new(PlanedrawGraph(doc.graph)));
        if !out_drawing.is_null() {
            *out_drawing = doc
                .drawing
                .map_or(ptr::null_mut(), |d| Box::into_raw(Box::new(PlanedrawDrawing(d))));
        }
        Ok(PlanedrawStatus::Ok)
    })
}

/// Generates an instance of a named family (`triangle`, `k4`, `octahedron`,
/// `wheel`, `stacked`, `cycle`, `star`, `random`). `size` 0 means no size
/// parameter.
///
/// # Safety
/// `family` must be a nul-terminated string and `out_graph` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn planedraw_graph_generate(
    family: *const c_char,
    size: usize,
    seed: u64,
    out_graph: *mut *mut PlanedrawGraph,
) -> PlanedrawStatus {
    guard(|| {
        let family = read_str(family, "family")?;
        if out_graph.is_null() {
            return Err(null("out_graph"));
        }
        let spec = GeneratorSpec::parse(family, (size > 0).then_some(size), seed)?;
        *out_graph = Box::into_raw(Box::new(PlanedrawGraph(generate(&spec)?)));
        Ok(PlanedrawStatus::Ok)
    })
}

/// # Safety
/// `graph` must be null or a handle from this library not freed yet.
#[no_mangle]
pub unsafe extern "C" fn planedraw_graph_free(graph: *mut PlanedrawGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn planedraw_graph_vertex_count(graph: *const PlanedrawGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.vertex_count())
}

/// Number of edges, or 0 for a null handle.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn planedraw_graph_edge_count(graph: *const PlanedrawGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.edge_count())
}

/// Canonical document text for the graph, with coordinates when `drawing`
/// is non-null.
///
/// # Safety
/// `graph` must be a live handle, `drawing` null or a live handle, and
/// `out_text` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn planedraw_graph_to_text(
    graph: *const PlanedrawGraph,
    drawing: *const PlanedrawDrawing,
    out_text: *mut *mut c_char,
) -> PlanedrawStatus {
    guard(|| {
        let g = graph_ref(graph)?;
        if out_text.is_null() {
            return Err(null("out_text"));
        }
        let doc = Document {
            graph: g.clone(),
            drawing: drawing.as_ref().map(|d| d.0.clone()),
        };
        *out_text = into_c_string(write_document(&doc));
        Ok(PlanedrawStatus::Ok)
    })
}

/// Computes a straight-line drawing. `tolerance` is used by the floating
/// kernel only. The result is fully verified before it is returned.
///
/// # Safety
/// `graph` must be a live handle and `out_drawing` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn planedraw_draw(
    graph: *const PlanedrawGraph,
    strategy: PlanedrawStrategy,
    kernel: PlanedrawKernel,
    tolerance: f64,
    out_drawing: *mut *mut PlanedrawDrawing,
) -> PlanedrawStatus {
    guard(|| {
        let g = graph_ref(graph)?;
        if out_drawing.is_null() {
            return Err(null("out_drawing"));
        }
        let strategy = match strategy {
            PlanedrawStrategy::Main => Strategy::Main,
            PlanedrawStrategy::Footnote => Strategy::Footnote,
        };
        let options = LayoutOptions {
            verify_each_split: false,
            ..match kernel {
                PlanedrawKernel::Exact => LayoutOptions::exact(),
                PlanedrawKernel::Float => LayoutOptions::floating(tolerance),
            }
        };
        let drawing = match kernel {
            PlanedrawKernel::Exact => draw_with(g, strategy, &options)?.drawing,
            PlanedrawKernel::Float => draw_with::<f64>(g, strategy, &options)?.drawing.to_exact().as_exact_kernel(),
        };
        *out_drawing = Box::into_raw(Box::new(PlanedrawDrawing(drawing)));
        Ok(PlanedrawStatus::Ok)
    })
}

/// # Safety
/// `drawing` must be null or a handle from this library not freed yet.
#[no_mangle]
pub unsafe extern "C" fn planedraw_drawing_free(drawing: *mut PlanedrawDrawing) {
    if !drawing.is_null() {
        drop(Box::from_raw(drawing));
    }
}

/// Certifies `drawing` against `graph` with exact arithmetic. Returns
/// `PLANEDRAW_STATUS_OK` on a pass and `PLANEDRAW_STATUS_VERIFY_FAILED` otherwise.
/// When `out_report` is non-null the JSON report `{passed, violations}` is
/// stored there.
///
/// # Safety
/// `graph` and `drawing` must be live handles; `out_report` must be null or
/// valid for a write.
#[no_mangle]
pub unsafe extern "C" fn planedraw_verify(
    graph: *const PlanedrawGraph,
    drawing: *const PlanedrawDrawing,
    out_report: *mut *mut c_char,
) -> PlanedrawStatus {
    guard(|| {
        let g = graph_ref(graph)?;
        let d = drawing_ref(drawing)?;
        let report = verify(g, d)?;
        if !out_report.is_null() {
            *out_report = into_c_string(serde_json::to_string(&report).expect("report serializes"));
        }
        if report.passed {
            Ok(PlanedrawStatus::Ok)
        } else {
            set_error(format!("{} violation(s)", report.violations.len()));
            Ok(PlanedrawStatus::VerifyFailed)
        }
    })
}

/// Nearest `double` values of a vertex's coordinates.
///
/// # Safety
/// `drawing` must be a live handle; `out_x` and `out_y` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn planedraw_drawing_point(
    drawing: *const PlanedrawDrawing,
    vertex: usize,
    out_x: *mut f64,
    out_y: *mut f64,
) -> PlanedrawStatus {
    guard(|| {
        let d = drawing_ref(drawing)?;
        if out_x.is_null() || out_y.is_null() {
            return Err(null("out_x/out_y"));
        }
        let p = d
            .point(vertex)
            .ok_or_else(|| Failure(PlanedrawStatus::Argument, format!("vertex {vertex} is not drawn")))?;
        let (x, y) = p.approx();
        *out_x = x;
        *out_y = y;
        Ok(PlanedrawStatus::Ok)
    })
}

/// Exact coordinates of a vertex as `num/den` strings.
///
/// # Safety
/// `drawing` must be a live handle; `out_x` and `out_y` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn planedraw_drawing_point_exact(
    drawing: *const PlanedrawDrawing,
    vertex: usize,
    out_x: *mut *mut c_char,
    out_y: *mut *mut c_char,
) -> PlanedrawStatus {
    guard(|| {
        let d = drawing_ref(drawing)?;
        if out_x.is_null() || out_y.is_null() {
            return Err(null("out_x/out_y"));
        }
        let p = d
            .point(vertex)
            .ok_or_else(|| Failure(PlanedrawStatus::Argument, format!("vertex {vertex} is not drawn")))?;
        *out_x = into_c_string(format_rational(&p.x));
        *out_y = into_c_string(format_rational(&p.y));
        Ok(PlanedrawStatus::Ok)
    })
}

/// SVG rendering with default options; violating edges are highlighted.
///
/// # Safety
/// `graph` and `drawing` must be live handles and `out_svg` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn planedraw_svg(
    graph: *const PlanedrawGraph,
    drawing: *const PlanedrawDrawing,
    out_svg: *mut *mut c_char,
) -> PlanedrawStatus {
    guard(|| {
        let g = graph_ref(graph)?;
        let d = drawing_ref(drawing)?;
        if out_svg.is_null() {
            return Err(null("out_svg"));
        }
        let highlight = verify(g, d)?.violations.iter().flat_map(|v| v.edges()).collect();
        let options = SvgOptions {
            highlight,
            ..SvgOptions::default()
        };
        *out_svg = into_c_string(emit_svg(g, d, &options));
        Ok(PlanedrawStatus::Ok)
    })
}

/// Default relative tolerance of the floating kernel.
#[no_mangle]
pub extern "C" fn planedraw_default_tolerance() -> f64 {
    Kernel::DEFAULT_TOLERANCE
}
