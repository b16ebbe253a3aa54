use super::{CannyParams, EdgeMap, GrayImage};

/// Double thresholding followed by 8-connected edge linking.
///
/// A pixel with thinned magnitude `m > 0` is strong when `m >= high` and weak
/// when `low <= m < high`. The result holds every strong pixel and every weak
/// pixel joined to one through weak or strong pixels. Zero magnitudes are
/// never edges, whatever the thresholds.
pub fn hysteresis(thinned: &GrayImage, params: &CannyParams) -> EdgeMap {
    let (w, h) = (thinned.width(), thinned.height());
    let low = params.low_threshold().max(1);
    let high = params.high_threshold().max(1);
    let values = thinned.values();

    let mut edges = vec![false; w * h];
    let mut stack: Vec<usize> = Vec::new();
    for (i, &m) in values.iter().enumerate() {
        if m >= high {
            edges[i] = true;
            stack.push(i);
        }
    }
    while let Some(i) = stack.pop() {
        let (x, y) = (i % w, i / w);
        for ny in y.saturating_sub(1)..=(y + 1).min(h - 1) {
            for nx in x.saturating_sub(1)..=(x + 1).min(w - 1) {
                let j = ny * w + nx;
                if !edges[j] && values[j] >= low {
                    edges[j] = true;
                    stack.push(j);
                }
            }
        }
    }
    EdgeMap::from_membership(w, h, edges)
}
