use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{Int, IntMatrix};

/// Row-style Hermite normal form: `H = W * A` for some unimodular `W`, upper
/// echelon, positive pivots, entries above each pivot reduced into
/// `[0, pivot)`. Zero rows end up at the bottom.
pub fn hermite_normal_form(a: &IntMatrix) -> IntMatrix {
    let (m, n) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        // Euclid down the column until a single nonzero entry remains at row r.
        loop {
            let mut best: Option<usize> = None;
            for i in r..m {
                if !h[(i, c)].is_zero() && best.map_or(true, |b| h[(i, c)].abs() < h[(b, c)].abs()) {
                    best = Some(i);
                }
            }
            let Some(p) = best else { break };
            h.swap_rows(r, p);
            let mut done = true;
            for i in r + 1..m {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = &h[(i, c)] / &h[(r, c)];
                sub_row(&mut h, i, r, &q);
                done &= h[(i, c)].is_zero();
            }
            if done {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            for j in 0..n {
                h[(r, j)] = -h[(r, j)].clone();
            }
        }
        for i in 0..r {
            let q = h[(i, c)].div_floor(&h[(r, c)]);
            if !q.is_zero() {
                sub_row(&mut h, i, r, &q);
            }
        }
        r += 1;
    }
    h
}

fn sub_row(h: &mut IntMatrix, target: usize, source: usize, q: &Int) {
    for j in 0..h.cols() {
        let delta = q * &h[(source, j)];
        h[(target, j)] -= delta;
    }
}
