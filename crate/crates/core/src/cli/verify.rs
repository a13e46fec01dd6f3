//! The `verify` report: every checked claim recomputed from scratch, with the
//! expected value written out independently of the code under test.
//!
//! Claim ids are stable strings such as `classify/n=3` or
//! `pairs/dim5/row7`. Randomized checks use a fixed ChaCha seed, so the
//! report is byte-identical between runs apart from the `timings_ms` field.

use std::time::Instant;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use super::json as js;
use crate::linalg::{self, smith_normal_form, Int, IntMatrix, Matrix, Rat};
use crate::localalg::{
    action_formula, catalog, orbit_quadric, verify_action_formula, verify_additive_action, w_alpha, ActionKind,
    AlgebraError, LocalAlgebra, Subspace,
};
use crate::polytope::{classify_inscribed_hypersurface_polytopes, LatticePolytope};
use crate::toric::{self, QuadraticForm};

pub const SEED: u64 = 0x5eed_0001;

#[derive(Clone, Debug, PartialEq)]
pub struct Claim {
    pub id: String,
    pub subject: String,
    pub expected: Value,
    pub computed: Value,
}

impl Claim {
    pub fn pass(&self) -> bool {
        self.expected == self.computed
    }
}

struct Report {
    claims: Vec<Claim>,
    timings: Map<String, Value>,
}

impl Report {
    fn check(&mut self, id: impl Into<String>, subject: &str, expected: Value, computed: impl FnOnce() -> Value) {
        let id = id.into();
        let start = Instant::now();
        let computed = computed();
        self.timings.insert(id.clone(), json!(start.elapsed().as_millis() as u64));
        self.claims.push(Claim { id, subject: subject.into(), expected, computed });
    }
}

/// All claims in a fixed order. Classification runs for `n = 1..=dim_max`.
pub fn verification_claims(dim_max: usize) -> (Vec<Claim>, Map<String, Value>) {
    let mut r = Report { claims: Vec::new(), timings: Map::new() };
    classification(&mut r, dim_max);
    normality(&mut r);
    equations(&mut r);
    cox_data(&mut r);
    component_groups(&mut r);
    dimension_four_pairs(&mut r);
    dimension_five_pairs(&mut r);
    alpha_family(&mut r);
    actions(&mut r);
    properties(&mut r);
    (r.claims, r.timings)
}

pub fn verification_report(dim_max: usize, timings: bool) -> Value {
    let (claims, times) = verification_claims(dim_max);
    let passed = claims.iter().filter(|c| c.pass()).count();
    let rows: Vec<Value> = claims
        .iter()
        .map(|c| {
            json!({ "id": c.id, "subject": c.subject, "expected": c.expected, "computed": c.computed, "pass": c.pass() })
        })
        .collect();
    let mut out = Map::new();
    out.insert("status".into(), json!(if passed == claims.len() { "pass" } else { "fail" }));
    out.insert("passed".into(), json!(passed));
    out.insert("total".into(), json!(claims.len()));
    out.insert("claims".into(), Value::Array(rows));
    if timings {
        out.insert("timings_ms".into(), Value::Object(times));
    }
    Value::Object(out)
}

fn sorted_polytopes(mut ps: Vec<LatticePolytope>) -> Value {
    ps.sort_by(|a, b| a.vertices().cmp(b.vertices()));
    Value::Array(ps.iter().map(js::polytope).collect())
}

fn classification(r: &mut Report, dim_max: usize) {
    for n in 1..=dim_max {
        let mut expected = vec![LatticePolytope::family_a(n)];
        if n >= 2 {
            expected.push(LatticePolytope::family_b(n));
        }
        r.check(
            format!("classify/n={n}"),
            "inscribed lattice polytopes with n + 2 lattice points are A(n) and, from n = 2, B(n)",
            sorted_polytopes(expected),
            || sorted_polytopes(classify_inscribed_hypersurface_polytopes(n)),
        );
    }
}

fn families(n: usize) -> [(&'static str, LatticePolytope); 2] {
    [("A", LatticePolytope::family_a(n)), ("B", LatticePolytope::family_b(n))]
}

fn normality(r: &mut Report) {
    for n in 2..=5 {
        for (name, p) in families(n) {
            let k = (n - 1) as u32;
            r.check(
                format!("normality/{name}/n={n}"),
                "normal up to dilation n - 1 and very ample",
                json!({ "normal": true, "very_ample": "true" }),
                || json!({ "normal": p.is_normal(k), "very_ample": p.very_ample_with_bound(k).as_str() }),
            );
        }
    }
}

fn equations(r: &mut Report) {
    for n in 2..=6 {
        for ((name, p), (binomial, rank)) in families(n).into_iter().zip([("z0*z2 - z1^2", 3), ("z0*z3 - z1*z2", 4)]) {
            r.check(
                format!("equation/{name}/n={n}"),
                "binomial equation of the toric hypersurface and the rank of its quadric",
                json!({ "binomial": binomial, "rank": rank }),
                || match toric::hypersurface_equation(&p) {
                    Ok(eq) => json!({ "binomial": eq.to_string(), "rank": eq.quadratic_form().map(|q| q.rank()) }),
                    Err(e) => json!({ "error": e.to_string() }),
                },
            );
        }
    }
}

fn cox_data(r: &mut Report) {
    for n in 2..=5usize {
        let mut a_degrees = vec![json!([1])];
        a_degrees.extend((1..n).map(|_| json!([2])));
        a_degrees.push(json!([1]));
        let mut b_degrees = vec![json!([1, 0]), json!([0, 1])];
        b_degrees.extend((2..n).map(|_| json!([1, 1])));
        b_degrees.extend([json!([1, 0]), json!([0, 1])]);
        let expectations = [
            ("A", "Z", a_degrees, 3 * (n - 1), 4 + (n - 1).pow(2) + 3 * (n - 1) - 1),
            ("B", "Z^2", b_degrees, 4 * (n - 2), 8 + (n - 2).pow(2) + 4 * (n - 2) - 2),
        ];
        for ((name, p), (_, group, degrees, ru, aut0)) in families(n).into_iter().zip(expectations) {
            r.check(
                format!("cox/{name}/n={n}"),
                "class group, ray degrees, unipotent radical and connected automorphism group dimensions",
                json!({ "class_group": group, "degrees": degrees, "ru_dim": ru, "aut0_dim": aut0 }),
                || match toric::cox_aut_report(&toric::normal_fan(&p)) {
                    Ok(c) => json!({
                        "class_group": c.class_group.describe(),
                        "degrees": c.class_group.degrees.iter().map(|d| js::int_list(&d.free)).collect::<Vec<_>>(),
                        "ru_dim": c.ru_dim,
                        "aut0_dim": c.aut0_dim,
                    }),
                    Err(e) => json!({ "error": e.to_string() }),
                },
            );
        }
    }
}

fn component_groups(r: &mut Report) {
    for n in 2..=4 {
        for ((name, p), order) in families(n).into_iter().zip([1, 2]) {
            r.check(
                format!("components/{name}/n={n}"),
                "order of the automorphism component group",
                json!(order),
                || match toric::component_group_order(&toric::normal_fan(&p)) {
                    Ok(k) => json!(k),
                    Err(e) => json!({ "error": e.to_string() }),
                },
            );
        }
    }
}

/// The fitted quadric rescaled to agree with `target` where `target` has its
/// first nonzero coefficient, so that proportional forms print identically.
fn rescaled(form: &QuadraticForm, target: &QuadraticForm) -> QuadraticForm {
    let t = target.coefficients();
    let f = form.coefficients();
    match t.iter().position(|c| !c.is_zero()) {
        Some(i) if !f[i].is_zero() => {
            let s = &t[i] / &f[i];
            QuadraticForm::from_coefficients(form.nvars(), &f.iter().map(|c| c * &s).collect::<Vec<_>>())
        }
        _ => form.clone(),
    }
}

fn quadric_summary(a: &LocalAlgebra, w: &Subspace, target: Option<&QuadraticForm>) -> Value {
    let degree = match a.hypersurface_degree(w) {
        Ok(d) => d,
        Err(e) => return json!({ "error": e.to_string() }),
    };
    match orbit_quadric(a, w) {
        Ok(q) => {
            let mut v = json!({ "degree": degree, "rank": q.rank });
            if let Some(t) = target {
                v["quadric"] = json!(rescaled(&q.quadric, t).to_string());
            }
            v
        }
        Err(e) => json!({ "degree": degree, "error": e.to_string() }),
    }
}

fn dimension_four_pairs(r: &mut Report) {
    let c = catalog();
    for p in c.pairs_with_prefix("dim4/") {
        let form = p.expected_form.as_ref().expect("dimension-4 pairs carry their quadric");
        r.check(
            format!("pairs/{}", p.label),
            "degree, quadric and rank of the orbit closure",
            json!({ "degree": p.expected_degree, "rank": p.expected_rank, "quadric": form.to_string() }),
            || quadric_summary(&p.algebra, &p.subspace, Some(form)),
        );
    }
    let r4 = &c.algebra("dim4/R4").expect("bundled").algebra;
    r.check(
        "pairs/dim4/R4",
        "the algebra with zero square of the maximal ideal admits no degree-two pair",
        json!({ "generating_coordinate_planes": 0, "degree": "zero ideal immediately" }),
        || {
            let planes: Vec<Subspace> = [(1, 2), (1, 3), (2, 3)]
                .iter()
                .map(|&(i, j)| r4.subspace(vec![r4.basis_vector(i), r4.basis_vector(j)]).expect("independent"))
                .collect();
            let generating = planes.iter().filter(|w| r4.generates(w)).count();
            let degree = match r4.hypersurface_degree(&planes[0]) {
                Err(AlgebraError::ZeroIdealImmediately) => json!("zero ideal immediately"),
                other => json!(format!("{other:?}")),
            };
            json!({ "generating_coordinate_planes": generating, "degree": degree })
        },
    );
}

fn dimension_five_pairs(r: &mut Report) {
    let c = catalog();
    let mut ranks = Map::new();
    for p in c.pairs_with_prefix("dim5/") {
        let summary = quadric_summary(&p.algebra, &p.subspace, None);
        if let Some(k) = summary.get("rank").and_then(Value::as_u64) {
            let slot = ranks.entry(k.to_string()).or_insert(json!(0));
            *slot = json!(slot.as_u64().unwrap() + 1);
        }
        r.check(
            format!("pairs/{}", p.label),
            "valid algebra, generating subspace, degree two, stated quadric rank",
            json!({ "valid": true, "generates": true, "degree": p.expected_degree, "rank": p.expected_rank }),
            || {
                let mut v = summary.clone();
                v["valid"] = json!(p.algebra.validate().is_valid());
                v["generates"] = json!(p.algebra.generates(&p.subspace));
                v
            },
        );
    }
    r.check(
        "pairs/dim5/rank-counts",
        "seven quadrics of rank 3, three of rank 4, one of rank 5",
        json!({ "3": 7, "4": 3, "5": 1 }),
        || Value::Object(ranks),
    );
}

fn alpha_family(r: &mut Report) {
    for a in [1i64, 2, 3, -1, 0] {
        let alpha = Rat::from_integer(a.into());
        let half = Rat::new(1.into(), 2.into());
        let expected_form = QuadraticForm::from_terms(
            6,
            &[(0, 3, alpha.clone()), (0, 4, -Rat::one()), (1, 1, -(&alpha * &half)), (2, 2, half.clone())],
        );
        let rank = if a == 0 { 3 } else { 4 };
        let pair = w_alpha(&alpha);
        r.check(
            format!("pairs/w-alpha/alpha={a}"),
            "alpha X0*X3 - X0*X4 - alpha/2 X1^2 + 1/2 X2^2 with rank 4, or 3 at alpha = 0",
            json!({ "degree": 2, "rank": rank, "quadric": expected_form.to_string() }),
            || quadric_summary(&pair.algebra, &pair.subspace, Some(&expected_form)),
        );
    }
}

fn actions(r: &mut Report) {
    for kind in [ActionKind::Q3, ActionKind::Q4] {
        for n in 2..=5 {
            r.check(
                format!("action/{kind}/n={n}"),
                "group law, invariance of the quadric, open orbit",
                json!({ "composition": true, "invariance": true, "jacobian_rank": n }),
                || match verify_additive_action(kind, n) {
                    Ok(c) => json!({ "composition": c.composition, "invariance": c.invariance, "jacobian_rank": c.jacobian_rank }),
                    Err(e) => json!({ "error": e.to_string() }),
                },
            );
        }
    }
    r.check(
        "action/Q3-without-square-term/n=2",
        "dropping a1^2 z0 from the third coordinate breaks invariance",
        json!({ "invariance": false }),
        || {
            let check = verify_action_formula(2, &ActionKind::Q3.quadric(2), |a, z| {
                let mut out = action_formula(ActionKind::Q3, a, z);
                out[2] = &out[2] - &(&(&a[0] * &a[0]) * &z[0]);
                out
            });
            json!({ "invariance": check.invariance })
        },
    );
}

fn random_rat(rng: &mut ChaCha8Rng) -> Rat {
    Rat::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=6).into())
}

fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> IntMatrix {
    let mut g = IntMatrix::identity(n);
    for _ in 0..3 * n {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let c = Int::from(rng.gen_range(-2i64..=2));
        for k in 0..n {
            let add = &c * &g[(j, k)];
            g[(i, k)] += add;
        }
    }
    if rng.gen_bool(0.5) {
        for k in 0..n {
            g[(0, k)] = -g[(0, k)].clone();
        }
    }
    g
}

fn properties(r: &mut Report) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let c = catalog();

    let pairs_per_algebra = 100;
    r.check(
        "property/exp-homomorphism",
        "exp(u) exp(v) = exp(u + v) and exp(u) exp(-u) = 1 in every bundled algebra",
        json!({ "checked": pairs_per_algebra * c.algebras.len(), "failures": 0 }),
        || {
            let mut failures = 0;
            for entry in &c.algebras {
                let a = &entry.algebra;
                for _ in 0..pairs_per_algebra {
                    let mut u: Vec<Rat> = (0..a.dim()).map(|_| random_rat(&mut rng)).collect();
                    let mut v: Vec<Rat> = (0..a.dim()).map(|_| random_rat(&mut rng)).collect();
                    u[0] = Rat::zero();
                    v[0] = Rat::zero();
                    let sum: Vec<Rat> = u.iter().zip(&v).map(|(x, y)| x + y).collect();
                    let neg: Vec<Rat> = u.iter().map(|x| -x).collect();
                    let (eu, ev, es, en) =
                        (a.exp(&u).unwrap(), a.exp(&v).unwrap(), a.exp(&sum).unwrap(), a.exp(&neg).unwrap());
                    if a.multiply(&eu, &ev) != es || a.multiply(&eu, &en) != a.unit() {
                        failures += 1;
                    }
                }
            }
            json!({ "checked": pairs_per_algebra * c.algebras.len(), "failures": failures })
        },
    );

    let transforms = 50;
    r.check(
        "property/unimodular-invariance",
        "lattice point count, normality, inscribed verdict and component group order are unimodular invariants",
        json!({ "checked": transforms, "failures": 0 }),
        || {
            let bases = [LatticePolytope::family_a(3), LatticePolytope::family_b(3), LatticePolytope::unit_simplex(3)];
            let invariants = |p: &LatticePolytope| {
                let fan = toric::normal_fan(p);
                (p.lattice_point_count(), p.is_normal(2), p.is_inscribed_in_rectangle(), toric::component_group_order(&fan).ok())
            };
            let reference: Vec<_> = bases.iter().map(invariants).collect();
            let mut failures = 0;
            for t in 0..transforms {
                let g = random_unimodular(&mut rng, 3);
                let shift: Vec<Int> = (0..3).map(|_| Int::from(rng.gen_range(-3i64..=3))).collect();
                let i = t % bases.len();
                let image = bases[i].affine_image(&g, &shift).expect("unimodular image");
                if invariants(&image) != reference[i] {
                    failures += 1;
                }
            }
            json!({ "checked": transforms, "failures": failures })
        },
    );

    let matrices = 100;
    r.check(
        "property/smith-normal-form",
        "U A V = D with U, V unimodular and D diagonal with dividing nonnegative entries",
        json!({ "checked": matrices, "failures": 0 }),
        || {
            let mut failures = 0;
            for _ in 0..matrices {
                let (m, n) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
                let a = Matrix::new(m, n, (0..m * n).map(|_| Int::from(rng.gen_range(-6i64..=6))).collect());
                let s = smith_normal_form(&a);
                let diagonal = (0..m).all(|i| (0..n).all(|j| i == j || s.d[(i, j)].is_zero()));
                let f: Vec<Int> = (0..m.min(n)).map(|i| s.d[(i, i)].clone()).collect();
                let divides = f.windows(2).all(|w| if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() });
                let ok = s.u.mul(&a).mul(&s.v) == s.d
                    && linalg::is_unimodular(&s.u)
                    && linalg::is_unimodular(&s.v)
                    && diagonal
                    && divides
                    && f.iter().all(|x| x >= &Int::zero());
                if !ok {
                    failures += 1;
                }
            }
            json!({ "checked": matrices, "failures": failures })
        },
    );

    r.check(
        "property/nullspace",
        "A k = 0 for each basis vector k, and rank plus nullity equals the column count",
        json!({ "checked": matrices, "failures": 0 }),
        || {
            let mut failures = 0;
            for _ in 0..matrices {
                let (m, n) = (rng.gen_range(1..=4), rng.gen_range(1..=5));
                let a = Matrix::new(m, n, (0..m * n).map(|_| random_rat(&mut rng)).collect::<Vec<Rat>>());
                let kernel = linalg::nullspace(&a);
                let annihilated = kernel.iter().all(|k| {
                    let kr: Vec<Rat> = k.iter().map(|x| Rat::from_integer(x.clone())).collect();
                    a.mul_vec(&kr).iter().all(Zero::is_zero)
                });
                if !annihilated || linalg::rank(&a) + kernel.len() != n {
                    failures += 1;
                }
            }
            json!({ "checked": matrices, "failures": failures })
        },
    );
}
