//! Binary PPM (P6) rendering: space left to right, time top to bottom.

use webca::additive::SpaceTimeDiagram;
use webca::error::{Error, Result};
use webca::percolation::ReachSet;
use webca::webca::{Grid2D, WebDiagram};

pub const WHITE: [u8; 3] = [255, 255, 255];
pub const BLACK: [u8; 3] = [0, 0, 0];
pub const OVERLAY: [u8; 3] = [0, 102, 255];
pub const DEFAULT_PIXEL_CAP: usize = 1 << 26;

#[derive(Clone, Copy, Debug)]
pub struct RenderSpec {
    pub cell_px: usize,
    /// Colours of states 0, 1 and 2.
    pub palette: [[u8; 3]; 3],
    pub pixel_cap: usize,
}

impl RenderSpec {
    pub fn new(cell_px: usize, two: [u8; 3]) -> Self {
        RenderSpec {
            cell_px,
            palette: [WHITE, BLACK, two],
            pixel_cap: DEFAULT_PIXEL_CAP,
        }
    }
}

/// Paints a `width × height` grid of cells, each `cell_px` pixels square.
pub fn render_cells(width: usize, height: usize, spec: &RenderSpec, color: impl Fn(usize, usize) -> [u8; 3]) -> Result<Vec<u8>> {
    if width == 0 || height == 0 {
        return Err(Error::Precondition("nothing to render".into()));
    }
    if spec.cell_px == 0 {
        return Err(Error::Precondition("cell size must be at least 1 pixel".into()));
    }
    let (pw, ph) = (width * spec.cell_px, height * spec.cell_px);
    if pw.saturating_mul(ph) > spec.pixel_cap {
        return Err(Error::MemoryCap {
            needed: (pw as u64).saturating_mul(ph as u64),
            cap: spec.pixel_cap as u64,
        });
    }
    let mut out = format!("P6\n{pw} {ph}\n255\n").into_bytes();
    out.reserve(pw * ph * 3);
    let mut line = Vec::with_capacity(pw * 3);
    for t in 0..height {
        line.clear();
        for x in 0..width {
            let c = color(x, t);
            for _ in 0..spec.cell_px {
                line.extend_from_slice(&c);
            }
        }
        for _ in 0..spec.cell_px {
            out.extend_from_slice(&line);
        }
    }
    Ok(out)
}

pub fn render_additive(d: &SpaceTimeDiagram, lo: i64, width: usize, spec: &RenderSpec, overlay: Option<&ReachSet>) -> Result<Vec<u8>> {
    render_cells(width, d.rows.len(), spec, |x, t| {
        let gx = lo + x as i64;
        if overlay.is_some_and(|r| r.contains(gx, t)) {
            OVERLAY
        } else {
            spec.palette[d.get(gx, t) as usize]
        }
    })
}

pub fn render_web(d: &WebDiagram, lo: i64, width: usize, spec: &RenderSpec) -> Result<Vec<u8>> {
    render_cells(width, d.rows.len(), spec, |x, t| spec.palette[d.get(lo + x as i64, t) as usize])
}

/// Occupied sites black, with rows of the image running along `y`.
pub fn render_grid(g: &Grid2D, spec: &RenderSpec) -> Result<Vec<u8>> {
    render_cells(g.width, g.height, spec, |x, y| {
        if g.time(g.x0 + x as i64, g.y0 + y as i64).is_some() {
            spec.palette[1]
        } else {
            spec.palette[0]
        }
    })
}
