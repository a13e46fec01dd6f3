//! Normalized additive actions of `G_a^n` on the quadrics
//! `Q3: z0*z2 - z1^2` and `Q4: z0*z3 - z1*z2` in `P^{n+1}`.
//!
//! Each action is affine-linear in `z` with polynomial coefficients in `a`,
//! so the group law and the invariance of the quadric are polynomial
//! identities. They are checked with `a`, `b` and `z` all symbolic.

use std::fmt;

use num_traits::Zero;

use super::{AlgebraError, ProjectivePoint};
use crate::linalg::{self, Matrix, Rat};
use crate::poly::Poly;
use crate::toric::QuadraticForm;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ActionKind {
    Q3,
    Q4,
}

impl ActionKind {
    /// Smallest `n` for which the formula makes sense.
    pub fn min_n(self) -> usize {
        match self {
            ActionKind::Q3 => 1,
            ActionKind::Q4 => 2,
        }
    }

    /// The invariant quadric in `n + 2` variables.
    pub fn quadric(self, n: usize) -> QuadraticForm {
        let one = Rat::from_integer(1.into());
        let terms = match self {
            ActionKind::Q3 => [(0, 2, one.clone()), (1, 1, -one)],
            ActionKind::Q4 => [(0, 3, one.clone()), (1, 2, -one)],
        };
        QuadraticForm::from_terms(n + 2, &terms)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ActionKind::Q3 => "Q3",
            ActionKind::Q4 => "Q4",
        }
    }
}

impl fmt::Display for ActionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for ActionKind {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, AlgebraError> {
        match s {
            "Q3" | "q3" => Ok(ActionKind::Q3),
            "Q4" | "q4" => Ok(ActionKind::Q4),
            _ => Err(AlgebraError::Parse { input: s.into(), reason: "expected Q3 or Q4".into() }),
        }
    }
}

/// `a . z` by the normalized formula; `a` has `n` entries and `z` has `n + 2`.
///
/// Q3: `[z0 : z1 + a1 z0 : z2 + 2 a1 z1 + a1^2 z0 : z3 + a2 z0 : ... : z_{n+1} + a_n z0]`.
/// Q4: `[z0 : z1 + a2 z0 : z2 + a1 z0 : z3 + a1 z1 + a2 z2 + a1 a2 z0 : z4 + a3 z0 : ...]`.
pub fn action_formula(kind: ActionKind, a: &[Poly], z: &[Poly]) -> Vec<Poly> {
    let n = a.len();
    assert_eq!(z.len(), n + 2, "point must have n + 2 coordinates");
    let mut out = z.to_vec();
    match kind {
        ActionKind::Q3 => {
            let two = Rat::from_integer(2.into());
            out[1] = &z[1] + &(&a[0] * &z[0]);
            out[2] = &(&z[2] + &(&(&a[0] * &z[1]) * &two)) + &(&(&a[0] * &a[0]) * &z[0]);
            for i in 1..n {
                out[i + 2] = &z[i + 2] + &(&a[i] * &z[0]);
            }
        }
        ActionKind::Q4 => {
            out[1] = &z[1] + &(&a[1] * &z[0]);
            out[2] = &z[2] + &(&a[0] * &z[0]);
            let cross = &(&(&a[0] * &z[1]) + &(&a[1] * &z[2])) + &(&(&a[0] * &a[1]) * &z[0]);
            out[3] = &z[3] + &cross;
            for i in 2..n {
                out[i + 2] = &z[i + 2] + &(&a[i] * &z[0]);
            }
        }
    }
    out
}

/// Applies the normalized action at a rational parameter.
pub fn normalized_action(
    kind: ActionKind,
    n: usize,
    a: &[Rat],
    z: &ProjectivePoint,
) -> Result<ProjectivePoint, AlgebraError> {
    if n < kind.min_n() {
        return Err(AlgebraError::Invalid(format!("{kind} needs n >= {}, got {n}", kind.min_n())));
    }
    if a.len() != n {
        return Err(AlgebraError::DimensionMismatch { expected: n, got: a.len() });
    }
    if z.coords().len() != n + 2 {
        return Err(AlgebraError::DimensionMismatch { expected: n + 2, got: z.coords().len() });
    }
    let constants = |v: Vec<Rat>| v.into_iter().map(|c| Poly::constant(0, c)).collect::<Vec<_>>();
    let image = action_formula(kind, &constants(a.to_vec()), &constants(z.rational()));
    let coords: Vec<Rat> = image.iter().map(|p| p.coefficient(&[])).collect();
    Ok(ProjectivePoint::new(&coords).expect("the action fixes z0 and z is nonzero"))
}

/// Pass/fail per property of a candidate action formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionCheck {
    pub n: usize,
    /// `a . (b . z) = (a + b) . z` as polynomials.
    pub composition: bool,
    /// `q(a . z) = q(z)` as polynomials.
    pub invariance: bool,
    /// Rank at `a = 0` of the Jacobian of `a -> a . [1:0:...:0]`.
    pub jacobian_rank: usize,
}

impl ActionCheck {
    pub fn pass(&self) -> bool {
        self.composition && self.invariance && self.jacobian_rank == self.n
    }
}

/// Checks an arbitrary formula `(a, z) -> a . z` against the quadric `q`.
pub fn verify_action_formula<F>(n: usize, q: &QuadraticForm, formula: F) -> ActionCheck
where
    F: Fn(&[Poly], &[Poly]) -> Vec<Poly>,
{
    // variables: a_1..a_n, b_1..b_n, z_0..z_{n+1}
    let nvars = 3 * n + 2;
    let a: Vec<Poly> = (0..n).map(|i| Poly::var(nvars, i)).collect();
    let b: Vec<Poly> = (0..n).map(|i| Poly::var(nvars, n + i)).collect();
    let z: Vec<Poly> = (0..n + 2).map(|i| Poly::var(nvars, 2 * n + i)).collect();

    let ab: Vec<Poly> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
    let composition = formula(&a, &formula(&b, &z)) == formula(&ab, &z);

    let invariance = eval_quadric(q, &formula(&a, &z), nvars) == eval_quadric(q, &z, nvars);

    let base: Vec<Poly> =
        (0..n + 2).map(|i| Poly::constant(nvars, Rat::from_integer(if i == 0 { 1 } else { 0 }.into()))).collect();
    let image = formula(&a, &base);
    let zero = vec![Rat::zero(); nvars];
    let rows: Vec<Vec<Rat>> =
        image.iter().map(|p| (0..n).map(|i| p.derivative(i).evaluate(&zero)).collect()).collect();
    let jacobian_rank = linalg::rank(&Matrix::from_rows(n, &rows));

    ActionCheck { n, composition, invariance, jacobian_rank }
}

fn eval_quadric(q: &QuadraticForm, z: &[Poly], nvars: usize) -> Poly {
    let mut out = Poly::zero(nvars);
    for i in 0..z.len() {
        for j in i..z.len() {
            let c = q.coefficient(i, j);
            if !c.is_zero() {
                out = &out + &(&(&z[i] * &z[j]) * &c);
            }
        }
    }
    out
}

/// Runs [`verify_action_formula`] on the normalized action of `kind`.
pub fn verify_additive_action(kind: ActionKind, n: usize) -> Result<ActionCheck, AlgebraError> {
    if n < kind.min_n() {
        return Err(AlgebraError::Invalid(format!("{kind} needs n >= {}, got {n}", kind.min_n())));
    }
    Ok(verify_action_formula(n, &kind.quadric(n), |a, z| action_formula(kind, a, z)))
}
