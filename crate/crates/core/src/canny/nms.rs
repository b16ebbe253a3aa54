use super::{Direction, GradientField, GrayImage};

/// Offsets (dx, dy) of the two neighbors compared along each direction,
/// in image coordinates (y grows downward).
pub(crate) fn neighbor_offsets(direction: Direction) -> [(isize, isize); 2] {
    match direction {
        Direction::Deg0 => [(-1, 0), (1, 0)],
        Direction::Deg90 => [(0, -1), (0, 1)],
        Direction::Deg45 => [(1, -1), (-1, 1)],
        Direction::Deg135 => [(-1, -1), (1, 1)],
    }
}

/// Keeps a magnitude only if it is ≥ both neighbors along its gradient
/// direction. Neighbors outside the image count as zero.
pub fn non_max_suppression(field: &GradientField) -> GrayImage {
    let (w, h) = (field.width, field.height);
    let mag = |x: isize, y: isize| -> u8 {
        if x < 0 || y < 0 || x >= w as isize || y >= h as isize {
            0
        } else {
            field.magnitude[y as usize * w + x as usize]
        }
    };
    GrayImage::from_fn(w, h, |x, y| {
        let i = y * w + x;
        let m = field.magnitude[i];
        let keep = neighbor_offsets(field.direction[i])
            .iter()
            .all(|&(dx, dy)| m >= mag(x as isize + dx, y as isize + dy));
        if keep {
            m
        } else {
            0
        }
    })
}
