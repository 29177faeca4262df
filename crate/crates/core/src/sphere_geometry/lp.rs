//! Exact rational linear programming, certificate-first.
//!
//! Two independent engines solve the strict-positivity feasibility problem
//! ("find `f` with `p·f > 0` for every point `p`"): Fourier–Motzkin
//! elimination for low dimensions and a phase-one simplex with Bland's rule
//! for the rest. Both return either a functional, re-verified exactly against
//! every input point, or an infeasibility certificate in the sense of Gordan's
//! theorem: nonnegative coefficients, not all zero, combining the points to
//! the zero vector. A shared phase-one core also answers cone-membership and
//! cone/subspace intersection queries with exact certificates.

use super::SphereError;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Largest dimension handled by Fourier–Motzkin before switching to simplex.
const FM_MAX_DIM: usize = 4;

/// Outcome of the strict-positivity LP over a point set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StrictLp {
    /// `functional · p > 0` for every input point (verified exactly).
    Feasible { functional: Vec<BigRational> },
    /// `Σ combination[i] · points[i] = 0` with nonnegative entries summing
    /// to one (verified exactly): no open half-space contains all points.
    Infeasible { combination: Vec<BigRational> },
}

/// Outcome of a cone-membership query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConeMembership {
    /// `target = Σ coefficients[i] · generators[i]` with nonnegative
    /// coefficients (verified exactly).
    Inside { coefficients: Vec<BigRational> },
    /// `separator · g ≤ 0` for every generator while `separator · target > 0`
    /// (verified exactly): the target is outside the cone.
    Outside { separator: Vec<BigRational> },
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Find `f` with `p·f > 0` for all `points`, or a Gordan certificate.
///
/// Inputs must be nonzero vectors of one common dimension. Dispatches to
/// Fourier–Motzkin in dimension ≤ 4 and to simplex above; the result is
/// re-verified exactly before being returned either way.
pub fn strict_positive_functional(
    points: &[Vec<BigRational>],
) -> Result<StrictLp, SphereError> {
    let n = validate_points(points)?;
    let outcome = if n <= FM_MAX_DIM {
        fourier_motzkin_strict(points, n)
    } else {
        simplex_strict(points, n)
    };
    verify_strict_outcome(points, &outcome)?;
    Ok(outcome)
}

/// The simplex engine on its own, for cross-checking against Fourier–Motzkin.
#[cfg_attr(not(test), allow(dead_code))]
pub(crate) fn strict_positive_functional_simplex(
    points: &[Vec<BigRational>],
) -> Result<StrictLp, SphereError> {
    let n = validate_points(points)?;
    let outcome = simplex_strict(points, n);
    verify_strict_outcome(points, &outcome)?;
    Ok(outcome)
}

fn validate_points(points: &[Vec<BigRational>]) -> Result<usize, SphereError> {
    let first = points.first().ok_or(SphereError::EmptyPointSet)?;
    let n = first.len();
    for (i, p) in points.iter().enumerate() {
        if p.len() != n {
            return Err(SphereError::AmbientMismatch {
                expected: n,
                got: p.len(),
            });
        }
        if p.iter().all(Zero::is_zero) {
            return Err(SphereError::ZeroVector { index: i });
        }
    }
    Ok(n)
}

fn verify_strict_outcome(
    points: &[Vec<BigRational>],
    outcome: &StrictLp,
) -> Result<(), SphereError> {
    match outcome {
        StrictLp::Feasible { functional } => {
            for p in points {
                if !dot(functional, p).is_positive() {
                    return Err(SphereError::Internal(
                        "solver returned a functional that is not strictly positive on a point"
                            .into(),
                    ));
                }
            }
        }
        StrictLp::Infeasible { combination } => {
            if combination.len() != points.len()
                || combination.iter().any(Signed::is_negative)
                || combination.iter().sum::<BigRational>() != BigRational::one()
            {
                return Err(SphereError::Internal(
                    "solver returned a malformed infeasibility certificate".into(),
                ));
            }
            let n = points[0].len();
            for j in 0..n {
                let s: BigRational = combination
                    .iter()
                    .zip(points)
                    .map(|(c, p)| c * &p[j])
                    .sum();
                if !s.is_zero() {
                    return Err(SphereError::Internal(
                        "solver returned a combination that does not vanish".into(),
                    ));
                }
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Fourier–Motzkin with multiplier tracking
// ---------------------------------------------------------------------------

/// One inequality `coeffs · f ≥ rhs`, tracked as the nonnegative combination
/// `mult` of the original rows `points[i] · f ≥ 1`.
#[derive(Clone)]
struct TrackedRow {
    coeffs: Vec<BigRational>,
    rhs: BigRational,
    mult: Vec<BigRational>,
}

fn fourier_motzkin_strict(points: &[Vec<BigRational>], n: usize) -> StrictLp {
    let m = points.len();
    let mut rows: Vec<TrackedRow> = points
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let mut mult = vec![BigRational::zero(); m];
            mult[i] = BigRational::one();
            TrackedRow {
                coeffs: p.clone(),
                rhs: BigRational::one(),
                mult,
            }
        })
        .collect();

    // stages[k] holds the rows present just before variable k is eliminated;
    // used for back-substitution.
    let mut stages: Vec<Vec<TrackedRow>> = Vec::with_capacity(n);
    for k in 0..n {
        stages.push(rows.clone());
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut rest = Vec::new();
        for r in rows {
            match r.coeffs[k].cmp(&BigRational::zero()) {
                std::cmp::Ordering::Greater => pos.push(r),
                std::cmp::Ordering::Less => neg.push(r),
                std::cmp::Ordering::Equal => rest.push(r),
            }
        }
        for p in &pos {
            for ng in &neg {
                // (−a_neg)·row_pos + a_pos·row_neg cancels variable k and
                // keeps both multipliers nonnegative.
                let cp = -&ng.coeffs[k];
                let cn = p.coeffs[k].clone();
                let coeffs: Vec<BigRational> = p
                    .coeffs
                    .iter()
                    .zip(&ng.coeffs)
                    .map(|(a, b)| &cp * a + &cn * b)
                    .collect();
                let rhs = &cp * &p.rhs + &cn * &ng.rhs;
                let mult: Vec<BigRational> = p
                    .mult
                    .iter()
                    .zip(&ng.mult)
                    .map(|(a, b)| &cp * a + &cn * b)
                    .collect();
                rest.push(TrackedRow { coeffs, rhs, mult });
            }
        }
        rows = dedupe_rows(rest);
    }

    // Every variable is eliminated: rows now read `0 ≥ rhs`.
    for r in &rows {
        if r.rhs.is_positive() {
            let total: BigRational = r.mult.iter().sum();
            let combination = r.mult.iter().map(|c| c / &total).collect();
            return StrictLp::Infeasible { combination };
        }
    }

    // Feasible: back-substitute from the last-eliminated variable.
    let mut f = vec![BigRational::zero(); n];
    for k in (0..n).rev() {
        let mut lower: Option<BigRational> = None;
        let mut upper: Option<BigRational> = None;
        for r in &stages[k] {
            if r.coeffs[k].is_zero() {
                continue;
            }
            // a·f_k ≥ rhs − Σ_{j>k} c_j f_j  (coefficients below k are
            // already eliminated at this stage).
            let tail: BigRational = (k + 1..n).map(|j| &r.coeffs[j] * &f[j]).sum();
            let bound = (&r.rhs - tail) / &r.coeffs[k];
            if r.coeffs[k].is_positive() {
                lower = Some(match lower {
                    Some(lo) if lo >= bound => lo,
                    _ => bound,
                });
            } else {
                upper = Some(match upper {
                    Some(hi) if hi <= bound => hi,
                    _ => bound,
                });
            }
        }
        f[k] = match (lower, upper) {
            (Some(lo), Some(hi)) => (lo + hi) / q(2),
            (Some(lo), None) => lo,
            (None, Some(hi)) => hi,
            (None, None) => BigRational::zero(),
        };
    }
    StrictLp::Feasible { functional: f }
}

/// Drop duplicate inequalities (same normalized coefficients and rhs),
/// keeping the first tracked multiplier for each.
fn dedupe_rows(rows: Vec<TrackedRow>) -> Vec<TrackedRow> {
    let mut seen: Vec<(Vec<BigRational>, BigRational)> = Vec::new();
    let mut out = Vec::new();
    'next: for r in rows {
        let scale = r
            .coeffs
            .iter()
            .chain(std::iter::once(&r.rhs))
            .find(|c| !c.is_zero())
            .map(|c| c.abs())
            .unwrap_or_else(BigRational::one);
        let key: (Vec<BigRational>, BigRational) = (
            r.coeffs.iter().map(|c| c / &scale).collect(),
            &r.rhs / &scale,
        );
        for s in &seen {
            if *s == key {
                continue 'next;
            }
        }
        seen.push(key);
        out.push(r);
    }
    out
}

// ---------------------------------------------------------------------------
// Phase-one simplex with Bland's rule
// ---------------------------------------------------------------------------

/// Result of the phase-one feasibility solve for `M x = b, x ≥ 0`.
pub(crate) enum PhaseOne {
    /// Structural variable values with `M x = b` (verified by the callers).
    Feasible { x: Vec<BigRational> },
    /// Row multipliers with `yᵀM ≤ 0` componentwise and `yᵀb > 0`.
    Infeasible { y: Vec<BigRational> },
}

/// Feasibility of `M x = b` with `x ≥ 0`, where `M` is given by its columns.
///
/// Classic phase-one: artificial variables seed the basis, Bland's rule
/// guarantees termination, and an optimum above zero yields the dual
/// certificate `y = c_B B⁻¹` read off the artificial columns.
pub(crate) fn phase_one(columns: &[Vec<BigRational>], rhs: &[BigRational]) -> PhaseOne {
    let m = rhs.len();
    let k = columns.len();
    debug_assert!(columns.iter().all(|c| c.len() == m));

    // Flip rows with negative right-hand side so b ≥ 0.
    let flip: Vec<bool> = rhs.iter().map(Signed::is_negative).collect();
    let sgn = |i: usize, v: &BigRational| if flip[i] { -v } else { v.clone() };

    // Tableau: m rows × (k structural + m artificial + 1 rhs) columns.
    let width = k + m + 1;
    let mut t: Vec<Vec<BigRational>> = (0..m)
        .map(|i| {
            let mut row = Vec::with_capacity(width);
            for col in columns {
                row.push(sgn(i, &col[i]));
            }
            for j in 0..m {
                row.push(if j == i {
                    BigRational::one()
                } else {
                    BigRational::zero()
                });
            }
            row.push(sgn(i, &rhs[i]));
            row
        })
        .collect();
    let mut basis: Vec<usize> = (k..k + m).collect();

    // Reduced costs for min Σ artificials: z_j = c_j − Σ_i T_ij over basic
    // artificial rows. Maintained incrementally through pivots.
    let mut z: Vec<BigRational> = (0..width)
        .map(|j| {
            let direct = if j >= k && j < k + m {
                BigRational::one()
            } else {
                BigRational::zero()
            };
            let through: BigRational = t.iter().map(|row| row[j].clone()).sum();
            direct - through
        })
        .collect();

    // Bland: entering column = lowest index with negative reduced cost.
    while let Some(enter) = (0..k + m).find(|&j| z[j].is_negative()) {
        // Ratio test; Bland tie-break on the lowest basis index.
        let mut leave: Option<(usize, BigRational)> = None;
        for (i, row) in t.iter().enumerate() {
            if !row[enter].is_positive() {
                continue;
            }
            let ratio = &row[width - 1] / &row[enter];
            leave = match leave {
                None => Some((i, ratio)),
                Some((li, lr)) => {
                    if ratio < lr || (ratio == lr && basis[i] < basis[li]) {
                        Some((i, ratio))
                    } else {
                        Some((li, lr))
                    }
                }
            };
        }
        let Some((pivot_row, _)) = leave else {
            // The phase-one objective is bounded below by zero, so an
            // unbounded ray cannot occur; defensive break.
            break;
        };
        // Pivot: scale the row, clear the column elsewhere and in z.
        let piv = t[pivot_row][enter].clone();
        for v in t[pivot_row].iter_mut() {
            *v /= &piv;
        }
        let prow = t[pivot_row].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i == pivot_row || row[enter].is_zero() {
                continue;
            }
            let factor = row[enter].clone();
            for (v, pv) in row.iter_mut().zip(&prow) {
                *v -= &factor * pv;
            }
        }
        let zfac = z[enter].clone();
        if !zfac.is_zero() {
            for (v, pv) in z.iter_mut().zip(&prow) {
                *v -= &zfac * pv;
            }
        }
        basis[pivot_row] = enter;
    }

    // Objective value = Σ of basic artificial levels.
    let infeasibility: BigRational = t
        .iter()
        .enumerate()
        .filter(|(i, _)| basis[*i] >= k)
        .map(|(_, row)| row[width - 1].clone())
        .sum();

    if infeasibility.is_zero() {
        let mut x = vec![BigRational::zero(); k];
        for (i, &b) in basis.iter().enumerate() {
            if b < k {
                x[b] = t[i][width - 1].clone();
            }
        }
        PhaseOne::Feasible { x }
    } else {
        // y = c_Bᵀ B⁻¹, with B⁻¹ living in the artificial columns; then
        // un-flip the rows negated at the start.
        let y: Vec<BigRational> = (0..m)
            .map(|j| {
                let raw: BigRational = t
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| basis[*i] >= k)
                    .map(|(_, row)| row[k + j].clone())
                    .sum();
                if flip[j] {
                    -raw
                } else {
                    raw
                }
            })
            .collect();
        PhaseOne::Infeasible { y }
    }
}

fn simplex_strict(points: &[Vec<BigRational>], n: usize) -> StrictLp {
    let m = points.len();
    // A f ≥ 1 with free f: f = u − v, slack s ≥ 0, A u − A v − s = 1.
    let mut columns: Vec<Vec<BigRational>> = Vec::with_capacity(2 * n + m);
    for j in 0..n {
        columns.push(points.iter().map(|p| p[j].clone()).collect());
    }
    for j in 0..n {
        columns.push(points.iter().map(|p| -&p[j]).collect());
    }
    for i in 0..m {
        columns.push(
            (0..m)
                .map(|r| if r == i { -BigRational::one() } else { BigRational::zero() })
                .collect(),
        );
    }
    let rhs = vec![BigRational::one(); m];
    match phase_one(&columns, &rhs) {
        PhaseOne::Feasible { x } => {
            let functional = (0..n).map(|j| &x[j] - &x[n + j]).collect();
            StrictLp::Feasible { functional }
        }
        PhaseOne::Infeasible { y } => {
            let total: BigRational = y.iter().sum();
            let combination = y.iter().map(|c| c / &total).collect();
            StrictLp::Infeasible { combination }
        }
    }
}

// ---------------------------------------------------------------------------
// Cone queries
// ---------------------------------------------------------------------------

/// Decide `target ∈ {Σ λ_i generators[i] : λ ≥ 0}` with a certificate either
/// way, both verified exactly.
pub fn cone_membership(
    target: &[BigRational],
    generators: &[Vec<BigRational>],
) -> Result<ConeMembership, SphereError> {
    let n = target.len();
    for g in generators {
        if g.len() != n {
            return Err(SphereError::AmbientMismatch {
                expected: n,
                got: g.len(),
            });
        }
    }
    let columns: Vec<Vec<BigRational>> = generators.to_vec();
    let outcome = match phase_one(&columns, target) {
        PhaseOne::Feasible { x } => ConeMembership::Inside { coefficients: x },
        PhaseOne::Infeasible { y } => ConeMembership::Outside { separator: y },
    };
    match &outcome {
        ConeMembership::Inside { coefficients } => {
            if coefficients.iter().any(Signed::is_negative) {
                return Err(SphereError::Internal(
                    "cone membership returned negative coefficients".into(),
                ));
            }
            for j in 0..n {
                let s: BigRational = coefficients
                    .iter()
                    .zip(generators)
                    .map(|(c, g)| c * &g[j])
                    .sum();
                if s != target[j] {
                    return Err(SphereError::Internal(
                        "cone membership coefficients do not reproduce the target".into(),
                    ));
                }
            }
        }
        ConeMembership::Outside { separator } => {
            if !dot(separator, target).is_positive()
                || generators.iter().any(|g| dot(separator, g).is_positive())
            {
                return Err(SphereError::Internal(
                    "cone separator certificate failed exact verification".into(),
                ));
            }
        }
    }
    Ok(outcome)
}

/// Do the cones over two vertex sets share a nonzero ray?
///
/// Requires the first vertex set to lie in some open half-space (true for
/// every constructed polytope), which makes "convex combination of the first
/// set" equivalent to "nonzero ray of its cone".
pub(crate) fn cones_intersect(
    a: &[Vec<BigRational>],
    b: &[Vec<BigRational>],
    n: usize,
) -> bool {
    // Σλ_i a_i − Σμ_j b_j = 0, Σλ = 1, all vars ≥ 0.
    let mut columns = Vec::with_capacity(a.len() + b.len());
    for v in a {
        let mut col: Vec<BigRational> = v.clone();
        col.push(BigRational::one());
        columns.push(col);
    }
    for w in b {
        let mut col: Vec<BigRational> = w.iter().map(|x| -x).collect();
        col.push(BigRational::zero());
        columns.push(col);
    }
    let mut rhs = vec![BigRational::zero(); n];
    rhs.push(BigRational::one());
    matches!(phase_one(&columns, &rhs), PhaseOne::Feasible { .. })
}

/// Does the cone over a vertex set meet a linear subspace outside the origin?
///
/// Same half-space requirement on the vertex set as [`cones_intersect`].
pub(crate) fn cone_meets_subspace(
    vertices: &[Vec<BigRational>],
    basis: &[Vec<BigRational>],
    n: usize,
) -> bool {
    // Σλ_i v_i − Σ c_k w_k = 0, Σλ = 1, λ ≥ 0, c free (split into ±).
    let mut columns = Vec::with_capacity(vertices.len() + 2 * basis.len());
    for v in vertices {
        let mut col: Vec<BigRational> = v.clone();
        col.push(BigRational::one());
        columns.push(col);
    }
    for w in basis {
        let mut col: Vec<BigRational> = w.iter().map(|x| -x).collect();
        col.push(BigRational::zero());
        columns.push(col.clone());
        columns.push(col.into_iter().map(|x| -x).collect());
    }
    let mut rhs = vec![BigRational::zero(); n];
    rhs.push(BigRational::one());
    matches!(phase_one(&columns, &rhs), PhaseOne::Feasible { .. })
}
