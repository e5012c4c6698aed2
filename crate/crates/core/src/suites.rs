//! Randomised verification suites for the group law, the subgroup lifts and the
//! Fock-space identities. Each suite reports its worst residuals.

use alloc::sync::Arc;
use alloc::vec::Vec;

use num_complex::Complex64;
use rand::Rng;

use crate::error::Result;
use crate::fock::FockTrunc;
use crate::lifts::{lift_unitary, verify_lift, ComplexLagrangianData, LagrangianFrame, PseudoUnitaryStructure};
use crate::linalg::{expm, RMat, RVec};
use crate::mpc::MpcElement;
use crate::sampling;
use crate::symplectic::SymplecticSpace;

/// One named maximum over a suite.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Metric {
    pub name: &'static str,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SuiteReport {
    pub name: &'static str,
    pub samples: usize,
    pub metrics: Vec<Metric>,
}

impl SuiteReport {
    fn new(name: &'static str, samples: usize, metrics: &[(&'static str, f64)]) -> Self {
        Self {
            name,
            samples,
            metrics: metrics.iter().map(|&(name, value)| Metric { name, value }).collect(),
        }
    }

    pub fn metric(&self, name: &str) -> Option<f64> {
        self.metrics.iter().find(|m| m.name == name).map(|m| m.value)
    }

    pub fn max_residual(&self) -> f64 {
        self.metrics.iter().map(|m| m.value).fold(0.0, f64::max)
    }
}

fn spaces(max_n: usize, hbar: f64) -> Result<Vec<Arc<SymplecticSpace>>> {
    (1..=max_n)
        .map(|n| SymplecticSpace::standard(n, hbar).map(Arc::new))
        .collect()
}

/// `‖g − C(1+Z)‖/‖g‖`, `‖(1−Z²) − (C*C)⁻¹‖`, and the Siegel-domain conditions,
/// cycling `n = 1..=max_n`.
pub fn siegel_suite<R: Rng + ?Sized>(rng: &mut R, count: usize, max_n: usize, hbar: f64) -> Result<SuiteReport> {
    let spaces = spaces(max_n, hbar)?;
    let (mut recon, mut cayley, mut symmetry, mut positivity) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for i in 0..count {
        let space = &spaces[i % max_n];
        let g = sampling::random_symplectic(space, rng, 1.5);
        let pair = space.cz_decompose(&g)?;
        recon = recon.max((&g - pair.reassemble(space)).norm() / g.norm());
        let res = pair.residuals();
        cayley = cayley.max(res.cayley);
        symmetry = symmetry.max(res.symmetry);
        positivity = positivity.max(if res.min_eigenvalue > 0.0 { 0.0 } else { 1.0 });
    }
    Ok(SuiteReport::new(
        "siegel",
        count,
        &[
            ("reconstruction", recon),
            ("cayley", cayley),
            ("z_symmetry", symmetry),
            ("domain_violation", positivity),
        ],
    ))
}

/// Associativity of the product and multiplicativity of `η` over random triples.
pub fn group_law_suite<R: Rng + ?Sized>(rng: &mut R, count: usize, max_n: usize, hbar: f64) -> Result<SuiteReport> {
    let spaces = spaces(max_n, hbar)?;
    let (mut assoc, mut eta, mut inverse) = (0.0f64, 0.0f64, 0.0f64);
    for i in 0..count {
        let space = &spaces[i % max_n];
        let x = sampling::random_mpc(space, rng, 1.0);
        let y = sampling::random_mpc(space, rng, 1.0);
        let z = sampling::random_mpc(space, rng, 1.0);
        let left = x.multiply(&y)?.multiply(&z)?;
        let right = x.multiply(&y.multiply(&z)?)?;
        let g_diff = (left.g() - right.g()).norm() / left.g().norm();
        assoc = assoc.max(g_diff.max((left.lambda() - right.lambda()).norm()));
        let xy = x.multiply(&y)?;
        eta = eta.max((xy.eta() - x.eta() * y.eta()).norm());
        let id = x.multiply(&x.inverse())?;
        let dim = space.dim();
        inverse = inverse.max((id.g() - RMat::identity(dim, dim)).norm() + (id.lambda() - 1.0).norm());
    }
    Ok(SuiteReport::new(
        "group_law",
        count,
        &[("associativity", assoc), ("eta_multiplicativity", eta), ("inverse", inverse)],
    ))
}

fn pairs<R: Rng + ?Sized, F: FnMut(&mut R) -> RMat>(rng: &mut R, count: usize, mut sample: F) -> Vec<(RMat, RMat)> {
    (0..count).map(|_| (sample(rng), sample(rng))).collect()
}

fn lift_report(name: &'static str, report: crate::lifts::LiftReport) -> SuiteReport {
    let errors = if report.errors == 0 { 0.0 } else { f64::INFINITY };
    SuiteReport::new(
        name,
        report.pairs,
        &[("f1", report.max_f1), ("f2", report.max_f2), ("evaluation_errors", errors)],
    )
}

/// Unitary (`n = 3`), pseudo-unitary of signature (1,1), real-Lagrangian and
/// complex-Lagrangian with `dim D = 1` (all in dimension 4), `count` pairs each.
pub fn lift_suites<R: Rng + ?Sized>(rng: &mut R, count: usize, hbar: f64) -> Result<Vec<SuiteReport>> {
    let s3 = Arc::new(SymplecticSpace::standard(3, hbar)?);
    let s2 = Arc::new(SymplecticSpace::standard(2, hbar)?);
    let mut out = Vec::with_capacity(4);

    let samples = pairs(rng, count, |r| sampling::random_unitary(&s3, r, 2.0));
    out.push(lift_report(
        "lift_unitary",
        verify_lift(&s3, |g| lift_unitary(&s3, g).map(|x| x.lambda()), &samples),
    ));

    let pseudo = PseudoUnitaryStructure::with_signature(Arc::clone(&s2), 1)?;
    let samples = pairs(rng, count, |r| expm(&pseudo.random_algebra(r, 1.5)));
    out.push(lift_report("lift_pseudo_unitary", verify_lift(&s2, |g| pseudo.lambda(g), &samples)));

    let frame = LagrangianFrame::standard(Arc::clone(&s2))?;
    let refl = frame.reflection();
    let samples = pairs(rng, count, |r| {
        let g = expm(&frame.random_algebra(r, 1.5));
        if sampling::uniform(r) > 0.0 {
            &refl * g
        } else {
            g
        }
    });
    out.push(lift_report("lift_real_lagrangian", verify_lift(&s2, |g| frame.lambda(g), &samples)));

    let data = ComplexLagrangianData::with_sign(Arc::clone(&s2), 1, false)?;
    let refl = data.reflection();
    let samples = pairs(rng, count, |r| {
        let g = expm(&data.random_algebra(r, 1.5));
        if sampling::uniform(r) > 0.0 {
            &refl * g
        } else {
            g
        }
    });
    out.push(lift_report("lift_complex_lagrangian", verify_lift(&s2, |g| data.lambda(g), &samples)));
    Ok(out)
}

fn unit(dim: usize, k: usize) -> RVec {
    RVec::from_fn(dim, |i, _| f64::from(u8::from(i == k)))
}

/// The Clifford relation on degrees `≤ q − 1`, the `ν` commutation and
/// homomorphism identities, and a central-difference check of `U_*` at step `h`.
pub fn clifford_suite<R: Rng + ?Sized>(rng: &mut R, n: usize, q: u32, hbar: f64, h: f64) -> Result<SuiteReport> {
    let space = Arc::new(SymplecticSpace::standard(n, hbar)?);
    let fock = FockTrunc::new(Arc::clone(&space), q);
    let dim = space.dim();
    let basis = fock.basis();
    let cls: Vec<_> = (0..dim).map(|k| fock.clifford(&unit(dim, k))).collect();
    let mut clifford = 0.0f64;
    for p in 0..dim {
        for r in 0..dim {
            let comm = cls[p].commutator(&cls[r]);
            let expected = Complex64::new(0.0, space.omega_form(&unit(dim, p), &unit(dim, r)) / hbar);
            let mut diff = comm.matrix;
            for i in 0..fock.dim() {
                diff[(i, i)] -= expected;
            }
            clifford = clifford.max(diff.columns(0, basis.prefix_len(q - 1)).norm());
        }
    }

    let a = sampling::random_sp_algebra(&space, rng, 1.0);
    let b = sampling::random_sp_algebra(&space, rng, 1.0);
    let na = fock.nu_embed(&a)?;
    let nb = fock.nu_embed(&b)?;
    let mut commutation = 0.0f64;
    for k in 0..dim {
        let v = unit(dim, k);
        let lhs = na.commutator(&cls[k]);
        let rhs = fock.clifford(&(&a * &v));
        commutation = commutation.max((&lhs - &rhs).norm_on_degrees(basis, q - 2));
    }
    let bracket = &a * &b - &b * &a;
    let homomorphism = (&fock.nu_embed(&bracket)? - &na.commutator(&nb)).norm_on_degrees(basis, q - 3);

    let y = sampling::random_u_algebra(&space, rng, 1.0);
    let theta = sampling::uniform(rng);
    let at = |t: f64| -> Result<_> {
        let x = MpcElement::new(Arc::clone(&space), expm(&(&y * t)), Complex64::from_polar(1.0, theta * t))?;
        Ok(fock.muc_action(&x)?.matrix)
    };
    let derivative = (at(h)? - at(-h)?) / Complex64::new(2.0 * h, 0.0);
    let expected = fock.infinitesimal_action(&y, theta)?;
    let finite_difference = (derivative - &expected.matrix).columns(0, basis.prefix_len(q - 1)).norm();

    Ok(SuiteReport::new(
        "clifford",
        1,
        &[
            ("clifford_relation", clifford),
            ("nu_commutation", commutation),
            ("nu_homomorphism", homomorphism),
            ("u_star_finite_difference", finite_difference),
        ],
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn suites_pass_on_small_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(siegel_suite(&mut rng, 20, 3, 1.0).unwrap().max_residual() < 1e-9);
        assert!(group_law_suite(&mut rng, 10, 2, 1.0).unwrap().max_residual() < 1e-8);
        for report in lift_suites(&mut rng, 10, 1.0).unwrap() {
            assert!(report.metric("f1").unwrap() < 1e-7, "{report:?}");
            assert!(report.metric("f2").unwrap() < 1e-9, "{report:?}");
        }
        let c = clifford_suite(&mut rng, 2, 4, 1.0, 1e-4).unwrap();
        assert!(c.metric("clifford_relation").unwrap() < 1e-12);
        assert!(c.metric("u_star_finite_difference").unwrap() < 1e-5);
    }

    #[test]
    fn same_seed_same_report() {
        let run = || {
            let mut rng = ChaCha8Rng::seed_from_u64(9);
            group_law_suite(&mut rng, 5, 2, 0.5).unwrap()
        };
        assert_eq!(run(), run());
    }
}
