//! The verification suites, run in a fixed order over one simple type.

use std::collections::BTreeMap;
use std::time::Instant;

use ibdouble::autgroup::{
    component_separation_check, der_decomposition_check, gamma_lifts, sample_family_elements,
    DerivationTag,
};
use ibdouble::chevalley::{build_simple, SimpleLieAlgebra};
use ibdouble::diagaut::{
    diagram_automorphism_group, ib_structure_check, is_group, node_root_vectors, recover_extended_cartan,
    DiagramAutomorphism,
};
use ibdouble::doubles::{
    build_g_eps, build_g_eps_plus, build_ib, build_ib_bar, eta_iso, g_eps_isomorphism, iota_embeddings, phi_eps_check,
    DoubleAlgebra,
};
use ibdouble::liealg::{center, check_jacobi, derived_subalgebra, AlgebraMap, DEFAULT_DERIVATION_CAP};
use ibdouble::linalg::span_dim;
use ibdouble::looptrunc::{gamma_eps, ib_to_borel_quotient, lift_to_loop, omega_compatible, semilinearity_lambda, theta_retraction};
use ibdouble::rootsys::{extended_cartan_from_strings, Family, RootSystem, SimpleType};
use ibdouble::scalar::{format_rational, parse_rational};
use ibdouble::{Error, Q};
use num_traits::Zero;

use crate::report::{LambdaEntry, ReportOptions, Status, SuiteResult, VerificationReport, SCHEMA_VERSION};

/// Suite names in execution order.
pub const SUITE_NAMES: [&str; 10] = [
    "roots",
    "jacobi",
    "isomorphisms",
    "structure",
    "cartan-recovery",
    "diagram",
    "lifts",
    "lambda",
    "derivations",
    "separation",
];

/// Samples per family in the separation suite.
pub const SAMPLES_PER_FAMILY: usize = 5;

/// Truncation window for the loop-algebra lifts.
pub const LAMBDA_WINDOW: i64 = 2;

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub epsilons: Vec<Q>,
    /// `None` runs every suite.
    pub suites: Option<Vec<String>>,
    pub der_cap: usize,
    pub seed: u64,
    pub timings: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self { epsilons: default_epsilons(), suites: None, der_cap: DEFAULT_DERIVATION_CAP, seed: 0, timings: false }
    }
}

pub fn default_epsilons() -> Vec<Q> {
    ["0", "1", "1/2", "-2"].iter().map(|s| parse_rational(s).expect("literal")).collect()
}

/// A problem with the command line rather than with the mathematics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn parse_type(s: &str) -> Result<SimpleType, UsageError> {
    s.parse::<SimpleType>().map_err(|e| UsageError(e.to_string()))
}

pub fn parse_epsilon_list(s: &str) -> Result<Vec<Q>, UsageError> {
    s.split(',')
        .map(|p| parse_rational(p.trim()).ok_or_else(|| UsageError(format!("cannot parse {p:?} as a rational number"))))
        .collect()
}

pub fn parse_suite_list(s: &str) -> Result<Vec<String>, UsageError> {
    s.split(',')
        .map(|p| {
            let p = p.trim();
            if SUITE_NAMES.contains(&p) {
                Ok(p.to_string())
            } else {
                Err(UsageError(format!("unknown suite {p:?}; known suites: {}", SUITE_NAMES.join(", "))))
            }
        })
        .collect()
}

/// Order of the automorphism group of the extended diagram, from the classification.
pub fn expected_diagram_group_order(t: SimpleType) -> usize {
    let l = t.rank();
    match t.family() {
        Family::A if l == 1 => 2,
        Family::A => 2 * (l + 1),
        Family::B | Family::C => 2,
        Family::D if l == 4 => 24,
        Family::D => 8,
        Family::E if l == 6 => 6,
        Family::E if l == 7 => 2,
        Family::E => 1,
        Family::F | Family::G => 1,
    }
}

/// Number of positive roots, from the classification.
pub fn expected_positive_roots(t: SimpleType) -> usize {
    let l = t.rank();
    match t.family() {
        Family::A => l * (l + 1) / 2,
        Family::B | Family::C => l * l,
        Family::D => l * (l - 1),
        Family::E if l == 6 => 36,
        Family::E if l == 7 => 63,
        Family::E => 120,
        Family::F => 24,
        Family::G => 6,
    }
}

enum Stop {
    Fail(String),
    Skip(String),
}

impl From<Error> for Stop {
    fn from(e: Error) -> Self {
        match e {
            Error::TooLarge { dim, cap } => {
                Stop::Skip(format!("dimension {dim} exceeds the derivation cap {cap}; raise it with --der-cap"))
            }
            Error::NotApplicable(r) => Stop::Skip(r),
            other => Stop::Fail(other.to_string()),
        }
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), Stop> {
    if cond {
        Ok(())
    } else {
        Err(Stop::Fail(msg()))
    }
}

fn fmt_q(x: &Q) -> String {
    format_rational(x)
}

struct Ctx {
    t: SimpleType,
    g: SimpleLieAlgebra<Q>,
    ib: Option<DoubleAlgebra<Q>>,
    group: Option<Vec<DiagramAutomorphism>>,
    lifts: Option<Vec<AlgebraMap<Q>>>,
    dims: BTreeMap<String, usize>,
    lambda_table: Vec<LambdaEntry>,
}

impl Ctx {
    fn ib(&mut self) -> Result<DoubleAlgebra<Q>, Stop> {
        if self.ib.is_none() {
            self.ib = Some(build_ib(&self.g)?);
        }
        Ok(self.ib.clone().expect("set"))
    }

    fn group(&mut self) -> Vec<DiagramAutomorphism> {
        self.group.get_or_insert_with(|| diagram_automorphism_group(self.g.roots().extended_cartan())).clone()
    }

    fn lifts(&mut self) -> Result<Vec<AlgebraMap<Q>>, Stop> {
        if self.lifts.is_none() {
            let ib = self.ib()?;
            self.lifts = Some(gamma_lifts(&ib)?);
        }
        Ok(self.lifts.clone().expect("set"))
    }
}

type SuiteFn = fn(&mut Ctx, &SuiteOptions, &mut Vec<String>) -> Result<(), Stop>;

fn suite_fn(name: &str) -> SuiteFn {
    match name {
        "roots" => roots_suite,
        "jacobi" => jacobi_suite,
        "isomorphisms" => isomorphism_suite,
        "structure" => structure_suite,
        "cartan-recovery" => cartan_recovery_suite,
        "diagram" => diagram_suite,
        "lifts" => lifts_suite,
        "lambda" => lambda_suite,
        "derivations" => derivations_suite,
        "separation" => separation_suite,
        _ => unreachable!("suite names are validated"),
    }
}

fn roots_suite(ctx: &mut Ctx, _: &SuiteOptions, d: &mut Vec<String>) -> Result<(), Stop> {
    let rs: &RootSystem = ctx.g.roots();
    let np = rs.num_positive();
    let expected = expected_positive_roots(ctx.t);
    d.push(format!("{np} positive roots, dim g = {}", ctx.g.dim()));
    ensure(np == expected, || format!("{np} positive roots, expected {expected}"))?;
    let ext = rs.extended_cartan();
    ensure(ext == extended_cartan_from_strings(rs).as_slice(), || "extended Cartan matrix disagrees with affine root strings".into())?;
    let marks = rs.marks();
    let kernel_ok = ext.iter().all(|row| row.iter().zip(marks).map(|(a, m)| a * m).sum::<i64>() == 0);
    ensure(kernel_ok && marks[0] == 1 && marks.iter().all(|&m| m > 0), || format!("marks {marks:?} do not span the kernel"))?;
    ensure(marks[1..] == *rs.highest_root().coords(), || "marks differ from the coefficients of the highest root".into())?;
    d.push(format!("marks {marks:?}, lowest root {}", rs.lowest_root()));
    ensure(ctx.g.algebra().has_integral_constants(), || "structure constants are not integral".into())?;
    if let Err(w) = check_jacobi(ctx.g.algebra()) {
        return Err(Stop::Fail(format!("Jacobi fails in g on {:?}", w.triple)));
    }
    d.push("Chevalley basis: integral constants, Jacobi holds".into());
    ctx.dims.insert("g".into(), ctx.g.dim());
    ctx.dims.insert("rank".into(), ctx.g.rank());
    ctx.dims.insert("positive_roots".into(), np);
    Ok(())
}

fn jacobi_suite(ctx: &mut Ctx, opts: &SuiteOptions, d: &mut Vec<String>) -> Result<(), Stop> {
    let (dim, r) = (ctx.g.dim(), ctx.g.rank());
    for eps in &opts.epsilons {
        let gp = build_g_eps_plus(&ctx.g, eps.clone())?;
        if let Err(w) = check_jacobi(gp.algebra()) {
            return Err(Stop::Fail(format!("g_eps_plus at eps = {}: Jacobi fails on {:?}", fmt_q(eps), w.triple)));
        }
        ensure(gp.dim() == dim + r, || format!("dim g_eps_plus = {}", gp.dim()))?;
        let zc = span_dim(&center(gp.algebra()));
        let zd = span_dim(&derived_subalgebra(gp.algebra()));
        ensure(zc == r && zd == dim, || format!("eps = {}: center {zc}, derived {zd}", fmt_q(eps)))?;
        let ge = build_g_eps(&ctx.g, eps.clone())?;
        if let Err(w) = check_jacobi(ge.algebra()) {
            return Err(Stop::Fail(format!("g_eps at eps = {}: Jacobi fails on {:?}", fmt_q(eps), w.triple)));
        }
        let iso = g_eps_isomorphism(&ctx.g, eps)?;
        ensure(iso.is_verified_isomorphism(), || format!("g_eps at eps = {} is not isomorphic to its model", fmt_q(eps)))?;
        if !eps.is_zero() {
            ensure(phi_eps_check(&ctx.g, eps)?, || format!("contraction identity fails at eps = {}", fmt_q(eps)))?;
        }
        d.push(format!("eps = {}: g_eps_plus (dim {}) and g_eps (dim {}) pass", fmt_q(eps), gp.dim(), ge.dim()));
    }
    let ib = ctx.ib()?;
    let bar = build_ib_bar(&ctx.g)?;
    ensure(check_jacobi(ib.algebra()).is_ok() && check_jacobi(bar.algebra()).is_ok(), || "Jacobi fails on Ib".into())?;
    ensure(bar.dim() == dim && span_dim(&center(bar.algebra())) == 0, || "Ib_bar has the wrong shape".into())?;
    let iota = iota_embeddings(&ctx.g)?;
    ensure(iota.all_hold(), || format!("iota embeddings: {iota:?}"))?;
    d.push(format!("Ib (dim {}) and Ib_bar (dim {}) pass; iota embeddings split g_1_plus", ib.dim(), bar.dim()));
    ctx.dims.insert("g_eps_plus".into(), dim + r);
    ctx.dims.insert("ib".into(), ib.dim());
    ctx.dims.insert("ib_bar".into(), bar.dim());
    Ok(())
}

fn isomorphism_suite(ctx: &mut Ctx, opts: &SuiteOptions, d: &mut Vec<String>) -> Result<(), Stop> {
    ensure(eta_iso(&ctx.g)?.is_verified_isomorphism(), || "eta is not an isomorphism".into())?;
    d.push("eta: g_0_plus -> Ib verified".into());
    ensure(ib_to_borel_quotient(&ctx.g)?.is_verified_isomorphism(), || "x + ty is not an isomorphism".into())?;
    d.push("Ib -> b~/t n~ verified".into());
    for eps in &opts.epsilons {
        let gm = gamma_eps(&ctx.g, eps)?;
        let th = theta_retraction(&ctx.g, eps)?;
        let round = th.compose(&gm)?;
        ensure(round.is_identity(), || format!("theta o gamma is not the identity at eps = {}", fmt_q(eps)))?;
        d.push(format!("eps = {}: gamma verified, theta o gamma = id", fmt_q(eps)));
    }
    Ok(())
}

fn structure_suite(ctx: &mut Ctx, opts: &SuiteOptions, d: &mut Vec<String>) -> Result<(), Stop> {
    let ib = ctx.ib()?;
    let s = ib_structure_check(&ib, 20, opts.seed)?;
    ctx.dims.insert("center".into(), s.center_dim);
    ctx.dims.insert("derived".into(), s.derived_dim);
    d.push(format!("center {} (rank {}), derived {} (dim g {})", s.center_dim, s.rank, s.derived_dim, s.simple_dim));
    d.push(format!(
        "Cartan self-normalizing {}, weights = roots {}, zero on th {}",
        s.cartan_self_normalizing, s.weights_biject_with_roots, s.weights_zero_on_th
    ));
    d.push(format!("n + tb- nilpotent {}, {}/{} samples with h-part rejected", s.nilpotent_basis, s.samples_rejected, s.samples));
    ensure(s.holds(), || format!("{s:?}"))
}

fn cartan_recovery_suite(ctx: &mut Ctx, _: &SuiteOptions, d: &mut Vec<String>) -> Result<(), Stop> {
    let ib = ctx.ib()?;
    let rec = recover_extended_cartan(&ib)?;
    let ext = ctx.g.roots().extended_cartan();
    ensure(rec.from_strings == ext, || format!("root strings give {:?}, expected {ext:?}", rec.from_strings))?;
    ensure(rec.from_ad == rec.from_strings, || format!("ad iteration gives {:?}", rec.from_ad))?;
    d.push(format!("recovered {:?} along both paths", rec.from_strings));
    Ok(())
}

fn diagram_suite(ctx: &mut Ctx, _: &SuiteOptions, d: &mut Vec<String>) -> Result<(), Stop> {
    let group = ctx.group();
    let expected = expected_diagram_group_order(ctx.t);
    d.push(format!("{} automorphisms (expected {expected})", group.len()));
    ensure(group.len() == expected, || format!("found {} automorphisms, expected {expected}", group.len()))?;
    ensure(is_group(&group), || "automorphisms are not closed under composition".into())?;
    let marks = ctx.g.roots().marks();
    ensure(
        group.iter().all(|s| (0..s.len()).all(|i| marks[s.apply(i)] == marks[i])),
        || "an automorphism does not preserve the marks".into(),
    )?;
    let listed: Vec<String> = group.iter().map(|s| s.to_string()).collect();
    d.push(listed.join(" "));
    ctx.dims.insert("diagram_automorphisms".into(), group.len());
    Ok(())
}

fn lifts_suite(ctx: &mut Ctx, _: &SuiteOptions, d: &mut Vec<String>) -> Result<(), Stop> {
    let group = ctx.group();
    let lifts = ctx.lifts()?;
    let ib = ctx.ib()?;
    ensure(lifts.len() == group.len(), || "lift count differs from the group order".into())?;
    ensure(lifts.iter().all(|l| l.is_verified_isomorphism()), || "a lift is not verified".into())?;
    for (i, a) in lifts.iter().enumerate() {
        for b in &lifts[i + 1..] {
            ensure(a.matrix() != b.matrix(), || "two diagram automorphisms have the same lift".into())?;
        }
    }
    let x = node_root_vectors(&ib);
    let alg = ib.algebra();
    let cartan: Vec<usize> = (0..ib.rank()).map(|i| ib.h(i)).collect();
    for (s, l) in group.iter().zip(&lifts) {
        for (i, &xi) in x.iter().enumerate() {
            ensure(l.image_of_basis(xi) == alg.basis_vector(x[s.apply(i)]), || format!("lift of {s} does not permute root vectors"))?;
        }
        for &h in &cartan {
            let img = l.image_of_basis(h);
            ensure(img.iter().enumerate().all(|(k, c)| c.is_zero() || cartan.contains(&k)), || format!("lift of {s} moves h"))?;
        }
        ensure(l.power(s.order())?.is_identity(), || format!("lift of {s} does not have order {}", s.order()))?;
        if s.is_identity() {
            ensure(l.is_identity(), || "the identity lifts to a non-identity map".into())?;
        }
    }
    for (i, a) in group.iter().enumerate() {
        for (j, b) in group.iter().enumerate() {
            let k = group.iter().position(|c| *c == a.compose(b)).expect("group is closed");
            let prod = lifts[i].compose(&lifts[j])?;
            ensure(prod.matrix() == lifts[k].matrix(), || format!("lift({a}) o lift({b}) != lift({a} o {b})"))?;
        }
    }
    let orders: Vec<String> = group.iter().map(|s| format!("{s}:{}", s.order())).collect();
    d.push(format!("{} lifts verified, injective, composition-compatible", lifts.len()));
    d.push(format!("orders {}", orders.join(" ")));
    Ok(())
}

fn lambda_suite(ctx: &mut Ctx, _: &SuiteOptions, d: &mut Vec<String>) -> Result<(), Stop> {
    let group = ctx.group();
    let mut failure = None;
    for s in &group {
        let outcome = lift_to_loop(&ctx.g, s, LAMBDA_WINDOW).and_then(|l| {
            let lam = semilinearity_lambda(&l)?;
            let om = omega_compatible(&l)?;
            Ok((lam, om))
        });
        match outcome {
            Ok((lam, om)) => {
                ctx.lambda_table.push(LambdaEntry {
                    automorphism: s.to_string(),
                    order: s.order(),
                    lambda: Some(fmt_q(&lam)),
                    omega_compatible: Some(om),
                });
                if !om && failure.is_none() {
                    failure = Some(format!("omega o lift o omega != lift for {s}"));
                }
            }
            Err(e) => {
                ctx.lambda_table.push(LambdaEntry { automorphism: s.to_string(), order: s.order(), lambda: None, omega_compatible: None });
                if failure.is_none() {
                    failure = Some(format!("{s}: {e}"));
                }
            }
        }
    }
    let ones = ctx.lambda_table.iter().filter(|e| e.lambda.as_deref() == Some("1/1")).count();
    d.push(format!("window N = {LAMBDA_WINDOW}: {} automorphisms, lambda = 1 for {ones}", group.len()));
    match failure {
        Some(f) => Err(Stop::Fail(f)),
        None => Ok(()),
    }
}

fn derivations_suite(ctx: &mut Ctx, opts: &SuiteOptions, d: &mut Vec<String>) -> Result<(), Stop> {
    let bar = build_ib_bar(&ctx.g)?;
    let rb = der_decomposition_check(&bar, opts.der_cap)?;
    d.push(format!("Der(Ib_bar) = {} (expected {})", rb.der_dim, rb.expected_dim));
    ctx.dims.insert("der_ib_bar".into(), rb.der_dim);
    rb.verify()?;
    let ib = ctx.ib()?;
    let ri = der_decomposition_check(&ib, opts.der_cap)?;
    d.push(format!(
        "Der(Ib) = {} (expected {}): d-line {}, inner {}, u-type {}",
        ri.der_dim,
        ri.expected_dim,
        ri.families.count(DerivationTag::DLine),
        ri.families.count(DerivationTag::Inner),
        ri.families.count(DerivationTag::UType)
    ));
    ctx.dims.insert("der_ib".into(), ri.der_dim);
    ri.verify()?;
    Ok(())
}

fn separation_suite(ctx: &mut Ctx, opts: &SuiteOptions, d: &mut Vec<String>) -> Result<(), Stop> {
    let ib = ctx.ib()?;
    let lifts = ctx.lifts()?;
    let samples = sample_family_elements(&ib, SAMPLES_PER_FAMILY, opts.seed)?;
    let rep = component_separation_check(&ib, &lifts, &samples)?;
    d.push(format!("{} family samples (D, U, exp-ad, torus) act trivially: {}", rep.samples.len(), rep.families_trivial()));
    d.push(format!("p injective on {} lifts: {}", lifts.len(), rep.injective_on_gamma));
    if let Some((fam, _)) = rep.samples.iter().find(|(_, ok)| !ok) {
        return Err(Stop::Fail(format!("a sample from {} acts nontrivially on Ib/[Ib, Ib]", fam.name())));
    }
    ensure(rep.injective_on_gamma, || "two lifts induce the same map on Ib/[Ib, Ib]".into())
}

/// Runs the selected suites, in the fixed order of [`SUITE_NAMES`], on one type.
pub fn run_suite(type_str: &str, opts: &SuiteOptions) -> Result<VerificationReport, UsageError> {
    let t = parse_type(type_str)?;
    let rs = RootSystem::from_type_str(&t.to_string()).map_err(|e| UsageError(e.to_string()))?;
    let selected: Vec<&str> = match &opts.suites {
        None => SUITE_NAMES.to_vec(),
        Some(list) => {
            for s in list {
                if !SUITE_NAMES.contains(&s.as_str()) {
                    return Err(UsageError(format!("unknown suite {s:?}")));
                }
            }
            SUITE_NAMES.iter().copied().filter(|n| list.iter().any(|s| s == n)).collect()
        }
    };
    let mut results = Vec::new();
    let mut timings = BTreeMap::new();
    let g = build_simple::<Q>(&rs);
    let mut ctx = match g {
        Ok(g) => Ctx { t, g, ib: None, group: None, lifts: None, dims: BTreeMap::new(), lambda_table: Vec::new() },
        Err(e) => {
            let suites = vec![SuiteResult::fail("roots", vec![], format!("building the Chevalley basis failed: {e}"))];
            return Ok(VerificationReport {
                schema: SCHEMA_VERSION,
                simple_type: t.to_string(),
                status: Status::Fail,
                options: report_options(opts, &selected),
                suites,
                lambda_table: vec![],
                dims: BTreeMap::new(),
                timings: None,
            });
        }
    };
    for name in &selected {
        let start = Instant::now();
        let mut details = Vec::new();
        let res = suite_fn(name)(&mut ctx, opts, &mut details);
        timings.insert(name.to_string(), start.elapsed().as_secs_f64());
        results.push(match res {
            Ok(()) => SuiteResult::pass(name, details),
            Err(Stop::Fail(w)) => SuiteResult::fail(name, details, w),
            Err(Stop::Skip(r)) => SuiteResult::skipped(name, details, r),
        });
    }
    Ok(VerificationReport {
        schema: SCHEMA_VERSION,
        simple_type: t.to_string(),
        status: VerificationReport::overall(&results),
        options: report_options(opts, &selected),
        suites: results,
        lambda_table: ctx.lambda_table,
        dims: ctx.dims,
        timings: opts.timings.then_some(timings),
    })
}

fn report_options(opts: &SuiteOptions, selected: &[&str]) -> ReportOptions {
    ReportOptions {
        epsilon: opts.epsilons.iter().map(fmt_q).collect(),
        suites: selected.iter().map(|s| s.to_string()).collect(),
        der_cap: opts.der_cap,
        seed: opts.seed,
    }
}

/// The extended diagram and its automorphisms, for the `diagram-aut` command.
pub fn diagram_summary(t: SimpleType) -> Result<(Vec<Vec<i64>>, Vec<i64>, Vec<DiagramAutomorphism>), UsageError> {
    let rs = RootSystem::from_type_str(&t.to_string()).map_err(|e| UsageError(e.to_string()))?;
    let group = diagram_automorphism_group(rs.extended_cartan());
    Ok((rs.extended_cartan().to_vec(), rs.marks().to_vec(), group))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parsing() {
        assert_eq!(parse_epsilon_list("0, 1/2,-2").unwrap().len(), 3);
        assert!(parse_epsilon_list("x").is_err());
        assert!(parse_suite_list("roots,lambda").is_ok());
        assert!(parse_suite_list("roots,nope").is_err());
        assert!(parse_type("Z9").is_err());
        assert!(run_suite("Z9", &SuiteOptions::default()).is_err());
    }

    #[test]
    fn expected_orders() {
        let t = |s: &str| parse_type(s).unwrap();
        assert_eq!(expected_diagram_group_order(t("A3")), 8);
        assert_eq!(expected_diagram_group_order(t("D5")), 8);
        assert_eq!(expected_diagram_group_order(t("E7")), 2);
        assert_eq!(expected_positive_roots(t("E8")), 120);
    }

    #[test]
    fn a1_skips_cartan_recovery() {
        let opts = SuiteOptions { suites: Some(vec!["cartan-recovery".into()]), ..Default::default() };
        let rep = run_suite("A1", &opts).unwrap();
        assert_eq!(rep.suites.len(), 1);
        assert_eq!(rep.suites[0].status, Status::Skipped);
        assert!(rep.passed());
    }
}
