//! Named batches of numerical checks, each reporting a worst-case deviation
//! against a tolerance.
//!
//! Every check has a canonical configuration (cutoff, optional total-photon
//! cap, safe bound). [`SuiteOverrides`] replaces those uniformly.

use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::{commutator, make_space, number_operator, photon_difference, FockSpace};
use crate::network::{
    classify, compile, compile_reduced, verify_exotic_identity, verify_multimode_identity, verify_three_mode_identity,
    Element, Mode, NetworkSpec,
};
use crate::su11::{
    exotic_realization, labels_up_to, number_form_transformed_casimir, pseudo_number_state,
    pseudo_two_mode_realization, two_mode_realization, weight_basis, weight_state, PseudoBoson, Side, WeightLabel,
};

pub const SUITES: &[&str] = &[
    "closure",
    "casimir",
    "ladder",
    "orthonormality",
    "multimode",
    "three-mode",
    "photon-difference",
    "exotic",
    "reduction",
];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub cutoff: u32,
    pub photon_cap: Option<u32>,
    pub safe_bound: Option<u32>,
}

/// Caller replacements for the canonical per-check settings.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SuiteOverrides {
    pub cutoff: Option<u32>,
    pub safe_bound: Option<u32>,
    /// Applies to every check without a more specific entry.
    pub tolerance: Option<f64>,
    /// `(prefix, tolerance)`: applies to checks whose name equals `prefix` or
    /// starts with `prefix/`. Later entries win.
    pub named_tolerances: Vec<(String, f64)>,
}

impl SuiteOverrides {
    fn tolerance_for(&self, name: &str, canonical: f64) -> f64 {
        let named = self
            .named_tolerances
            .iter()
            .rev()
            .find(|(p, _)| name == p || name.strip_prefix(p.as_str()).is_some_and(|rest| rest.starts_with('/')));
        named.map(|(_, t)| *t).or(self.tolerance).unwrap_or(canonical)
    }
}

/// Resolved space settings for one check.
#[derive(Clone, Copy, Debug)]
struct Setup {
    cutoff: u32,
    cap: Option<u32>,
    bound: u32,
}

impl Setup {
    /// Canonical settings, with overrides applied. A capped canonical space
    /// keeps the cap at `cutoff − 1` when the cutoff changes.
    fn resolve(cutoff: u32, capped: bool, bound: u32, o: &SuiteOverrides) -> Self {
        let cutoff = o.cutoff.unwrap_or(cutoff);
        let cap = capped.then(|| cutoff.saturating_sub(1));
        let bound = o.safe_bound.unwrap_or(if o.cutoff.is_some() { default_bound(cutoff, cap) } else { bound });
        Setup { cutoff, cap, bound }
    }

    fn space(&self, modes: usize) -> Result<Arc<FockSpace>> {
        make_space(modes, self.cutoff, self.cap)
    }
}

fn default_bound(cutoff: u32, cap: Option<u32>) -> u32 {
    let per_mode = cutoff.saturating_sub(3);
    cap.map_or(per_mode, |c| per_mode.min(c.saturating_sub(2)))
}

struct Recorder<'a> {
    overrides: &'a SuiteOverrides,
    out: Vec<CheckResult>,
}

impl Recorder<'_> {
    fn record(&mut self, name: &str, deviation: f64, canonical_tol: f64, setup: Setup, uses_bound: bool) {
        let tolerance = self.overrides.tolerance_for(name, canonical_tol);
        // a zero tolerance demands an exact zero; otherwise strictly below
        let pass = if tolerance == 0.0 { deviation == 0.0 } else { deviation < tolerance };
        self.out.push(CheckResult {
            name: name.to_string(),
            max_deviation: deviation,
            tolerance,
            pass,
            cutoff: setup.cutoff,
            photon_cap: setup.cap,
            safe_bound: uses_bound.then_some(setup.bound),
        });
    }
}

const PSEUDO_CASES: [(usize, usize); 3] = [(2, 1), (2, 2), (3, 2)];

fn pseudo_pair(r: usize, s: usize) -> Result<(PseudoBoson, PseudoBoson)> {
    Ok((PseudoBoson::default_for((0..r).collect())?, PseudoBoson::default_for((r..r + s).collect())?))
}

fn closure(rec: &mut Recorder) -> Result<()> {
    let setup = Setup::resolve(6, false, 3, rec.overrides);
    let space = setup.space(2)?;
    let dev = two_mode_realization(&space, 0, 1)?.closure_residuals(setup.bound)?.max();
    rec.record("closure/two-mode", dev, 1e-10, setup, true);
    for (r, s) in PSEUDO_CASES {
        let space = setup.space(r + s)?;
        let (pa, pb) = pseudo_pair(r, s)?;
        let dev = pseudo_two_mode_realization(&space, &pa, &pb)?.closure_residuals(setup.bound)?.max();
        rec.record(&format!("closure/pseudo-{r}-{s}"), dev, 1e-10, setup, true);
    }
    Ok(())
}

/// Labels with `2k ≤ 5`, `2μ ≤ 9` whose states leave `headroom` photons free.
fn label_range(space: &FockSpace, headroom: u32) -> Vec<WeightLabel> {
    let limit = space.max_total_photons().saturating_sub(headroom);
    labels_up_to(limit, space.max_single_mode_photons().saturating_sub(headroom))
        .into_iter()
        .filter(|l| l.two_k() <= 5 && l.two_mu() <= 9)
        .collect()
}

fn max_entry(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn casimir(rec: &mut Recorder) -> Result<()> {
    let setup = Setup::resolve(11, true, 0, rec.overrides);
    for (r, s) in PSEUDO_CASES {
        let space = setup.space(r + s)?;
        let (pa, pb) = pseudo_pair(r, s)?;
        let real = pseudo_two_mode_realization(&space, &pa, &pb)?;
        let mut worst = 0.0f64;
        for label in label_range(&space, 2) {
            let psi = weight_state(label, &pa, &pb, &space)?.expansion;
            let c_psi = real.casimir.apply_slice(psi.amplitudes());
            let eig = label.irrep().casimir_eigenvalue();
            let diff: Vec<_> = c_psi.iter().zip(psi.amplitudes()).map(|(c, p)| c - p * eig).collect();
            worst = worst.max(max_entry(&diff));
        }
        rec.record(&format!("casimir/pseudo-{r}-{s}"), worst, 1e-10, setup, false);
    }
    Ok(())
}

fn ladder(rec: &mut Recorder) -> Result<()> {
    let setup = Setup::resolve(11, true, 0, rec.overrides);
    for (r, s) in PSEUDO_CASES {
        let space = setup.space(r + s)?;
        let (pa, pb) = pseudo_pair(r, s)?;
        let real = pseudo_two_mode_realization(&space, &pa, &pb)?;
        let (mut coeff, mut off) = (0.0f64, 0.0f64);
        for label in label_range(&space, 2) {
            if label.raised().two_mu() > 9 {
                continue;
            }
            let psi = weight_state(label, &pa, &pb, &space)?.expansion;
            let up = weight_state(label.raised(), &pa, &pb, &space)?.expansion;
            let raised = real.k_plus.apply(&psi)?;
            let element = up.inner(&raised)?;
            coeff = coeff.max((element - label.raising_coefficient()).norm());
            // whatever K₊|k,μ⟩ leaves outside the single target state
            off = off.max(raised.max_abs_diff(&up.scaled(element))?);
        }
        rec.record(&format!("ladder/coefficient-{r}-{s}"), coeff, 1e-9, setup, false);
        rec.record(&format!("ladder/off-target-{r}-{s}"), off, 1e-9, setup, false);
    }
    Ok(())
}

fn gram_deviation(states: &[&crate::fock::StateVector]) -> Result<f64> {
    let mut worst = 0.0f64;
    for (i, x) in states.iter().enumerate() {
        for (j, y) in states.iter().enumerate() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((x.inner(y)? - target).norm());
        }
    }
    Ok(worst)
}

fn orthonormality(rec: &mut Recorder) -> Result<()> {
    let setup = Setup::resolve(6, false, 0, rec.overrides);
    for r in [2usize, 3] {
        let space = setup.space(r)?;
        let pseudo = PseudoBoson::chain((0..r).collect())?;
        let top = 4.min(space.max_single_mode_photons());
        let states: Vec<_> =
            (0..=top).map(|n| pseudo_number_state(n, &pseudo, Side::A, &space)).collect::<Result<_>>()?;
        let refs: Vec<_> = states.iter().map(|s| &s.expansion).collect();
        rec.record(&format!("orthonormality/pseudo-number-{r}"), gram_deviation(&refs)?, 1e-10, setup, false);
    }
    let setup = Setup::resolve(6, true, 3, rec.overrides);
    let space = setup.space(4)?;
    let (pa, pb) = pseudo_pair(2, 2)?;
    let basis = weight_basis(&pa, &pb, &space, setup.bound)?;
    let refs: Vec<_> = basis.iter().map(|w| &w.expansion).collect();
    rec.record("orthonormality/weight-basis-2-2", gram_deviation(&refs)?, 1e-10, setup, true);
    Ok(())
}

fn multimode(rec: &mut Recorder) -> Result<()> {
    let setup = Setup::resolve(6, true, 3, rec.overrides);
    for (r, s) in [(2usize, 2usize), (3, 2)] {
        let space = setup.space(r + s)?;
        let dev = verify_multimode_identity(r, s, Complex64::new(0.2, 0.0), &space, setup.bound)?;
        rec.record(&format!("multimode/generator-{r}-{s}"), dev.generator, 1e-9, setup, true);
        rec.record(&format!("multimode/unitary-{r}-{s}"), dev.unitary, 1e-7, setup, true);
    }
    Ok(())
}

fn three_mode(rec: &mut Recorder) -> Result<()> {
    let setup = Setup::resolve(8, true, 4, rec.overrides);
    let dev = verify_three_mode_identity(Complex64::new(0.2, 0.0), &setup.space(3)?, setup.bound)?;
    rec.record("three-mode/unitary", dev, 1e-8, setup, true);
    Ok(())
}

/// The reducible networks the conservation and reduction checks run over.
fn reducible_networks() -> Result<Vec<(String, NetworkSpec)>> {
    let eta = Complex64::new(0.2, 0.0);
    Ok(vec![
        ("primitive".into(), NetworkSpec::three_mode_primitive(2.0 * Complex64::i() * eta)),
        ("chain-2-2".into(), NetworkSpec::multimode_chain(2, 2, eta)?),
        ("chain-3-2".into(), NetworkSpec::multimode_chain(3, 2, eta)?),
    ])
}

/// The three-mode primitive followed by a second squeezer on `(a2, b1)`.
pub fn extra_squeezer_network(eta: f64, s_prime: f64) -> NetworkSpec {
    let mut spec = NetworkSpec::three_mode_primitive(Complex64::new(0.0, 2.0 * eta));
    spec.push(Element::squeezer(Mode::A(1), Mode::B(0), Complex64::new(0.0, s_prime))).expect("valid modes");
    spec
}

fn photon_difference_check(rec: &mut Recorder) -> Result<()> {
    let setup = Setup::resolve(6, true, 3, rec.overrides);
    for (name, spec) in reducible_networks()? {
        let space = setup.space(spec.num_modes())?;
        let d = photon_difference(&space, &spec.a_fock_modes(), &spec.b_fock_modes())?;
        let mut gen_dev = 0.0f64;
        for k in 0..spec.elements().len() {
            gen_dev = gen_dev.max(commutator(&d, &spec.element_generator(&space, k)?)?.max_abs());
        }
        rec.record(&format!("photon-difference/generators-{name}"), gen_dev, 0.0, setup, false);
        let u = compile(&spec, &space)?;
        let dev = commutator(&d, &u)?.restrict(setup.bound).max_abs();
        rec.record(&format!("photon-difference/unitary-{name}"), dev, 1e-9, setup, true);
    }
    Ok(())
}

fn exotic(rec: &mut Recorder) -> Result<()> {
    let setup = Setup::resolve(5, false, 2, rec.overrides);
    let ex = exotic_realization(&setup.space(3)?)?;
    rec.record("exotic/span-closure", ex.span_residual, 1e-9, Setup { bound: ex.safe_bound, ..setup }, true);

    let setup = Setup::resolve(6, false, 3, rec.overrides);
    let ex = exotic_realization(&setup.space(3)?)?;
    let target = number_operator(ex.space(), 1)?.try_sub(&number_operator(ex.space(), 0)?)?;
    let transformed = ex.transform(&ex.k_z)?;
    let dev = transformed.restrict(setup.bound).max_abs_diff(&target.restrict(setup.bound))?;
    rec.record("exotic/diagonalization", dev, 1e-9, setup, true);
    let expected = number_form_transformed_casimir(ex.space())?;
    let dev = ex.transform(ex.casimir())?.restrict(setup.bound).max_abs_diff(&expected.restrict(setup.bound))?;
    rec.record("exotic/transformed-casimir", dev, 1e-9, setup, true);

    let setup = Setup::resolve(8, false, 3, rec.overrides);
    let dev = verify_exotic_identity(0.1, 0.3, &setup.space(3)?, setup.bound)?;
    rec.record("exotic/identity", dev, 1e-7, setup, true);
    Ok(())
}

fn reduction(rec: &mut Recorder) -> Result<()> {
    let setup = Setup::resolve(6, true, 3, rec.overrides);
    let mut misclassified = 0usize;
    let mut reducible = vec![NetworkSpec::three_mode_primitive(Complex64::new(0.0, 0.4))];
    for r in 1..=5 {
        for s in 1..=4 {
            reducible.push(NetworkSpec::multimode_chain(r, s, Complex64::new(0.2, 0.0))?);
        }
    }
    misclassified += reducible.iter().filter(|s| classify(s).is_err()).count();
    misclassified += usize::from(classify(&extra_squeezer_network(0.1, 0.3)).is_ok());
    rec.record("reduction/classification", misclassified as f64, 0.0, setup, false);

    for (name, spec) in reducible_networks()? {
        let space = setup.space(spec.num_modes())?;
        let form = classify(&spec).map_err(|o| Error::Numerical(format!("{name} did not reduce: {o}")))?;
        let dev = compile(&spec, &space)?
            .restrict(setup.bound)
            .max_abs_diff(&compile_reduced(&form, &space)?.restrict(setup.bound))?;
        rec.record(&format!("reduction/compile-{name}"), dev, 1e-8, setup, true);
    }
    Ok(())
}

/// Runs one named suite, or all of them for `"all"`.
pub fn run_suite(name: &str, overrides: &SuiteOverrides) -> Result<Vec<CheckResult>> {
    let mut rec = Recorder { overrides, out: Vec::new() };
    let names: Vec<&str> = if name == "all" { SUITES.to_vec() } else { vec![name] };
    for suite in names {
        match suite {
            "closure" => closure(&mut rec)?,
            "casimir" => casimir(&mut rec)?,
            "ladder" => ladder(&mut rec)?,
            "orthonormality" => orthonormality(&mut rec)?,
            "multimode" => multimode(&mut rec)?,
            "three-mode" => three_mode(&mut rec)?,
            "photon-difference" => photon_difference_check(&mut rec)?,
            "exotic" => exotic(&mut rec)?,
            "reduction" => reduction(&mut rec)?,
            other => {
                return Err(Error::InvalidArgument(format!(
                    "unknown suite `{other}`; expected all or one of {}",
                    SUITES.join(", ")
                )))
            }
        }
    }
    Ok(rec.out)
}
