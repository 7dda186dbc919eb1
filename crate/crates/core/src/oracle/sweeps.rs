use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use super::bfs::CayleyBfs;
use crate::caps::{self, SizeCaps};
use crate::constructive::{cartan_dieudonne_factor, howie_factor, transposition_factor};
use crate::error::{Error, Result};
use crate::linear::{is_orthogonal, is_reflection, random_rational_orthogonal, QMatrix};
use crate::monoid::{
    self, divisibility_preorder, full_transformation_monoid, predicates, reduced_power_monoid,
    symmetric_group, FiniteMonoid, TableMonoid, TransformationMonoid,
};
use crate::preorder::validate_preorder;
use crate::premonoid::Premonoid;
use crate::rfix::{
    fix_preorder, permutation_height_formula, rfix_preorder, singular_height_formula,
    RfixPremonoidSpec, RfixRestriction,
};
use crate::transformation::{Permutation, Transformation};

/// Largest degree at which the sweeps run the breadth-first oracle.
pub const ORACLE_SWEEP_MAX_DEGREE: usize = 5;
/// Largest degree for the definitional degree-2 irreducibility scan.
pub const IRREDUCIBLE_SCAN_MAX_DEGREE: usize = 4;
/// Largest degree for the rfix/fix comparison (T_4 has 256 elements).
pub const FIX_LEMMA_MAX_DEGREE: usize = 4;
/// Largest degree for the conjugation check in the predicates suite.
pub const CONJUGATION_MAX_DEGREE: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Howie,
    Transpositions,
    Cd,
    Characterizations,
    FixLemma,
    Heights,
    PowerMonoids,
    QuarkEngine,
    Predicates,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Howie,
        Suite::Transpositions,
        Suite::Cd,
        Suite::Characterizations,
        Suite::FixLemma,
        Suite::Heights,
        Suite::PowerMonoids,
        Suite::QuarkEngine,
        Suite::Predicates,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Howie => "howie",
            Suite::Transpositions => "transpositions",
            Suite::Cd => "cd",
            Suite::Characterizations => "characterizations",
            Suite::FixLemma => "fix-lemma",
            Suite::Heights => "heights",
            Suite::PowerMonoids => "power-monoids",
            Suite::QuarkEngine => "quark-engine",
            Suite::Predicates => "predicates",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

/// Parameters a sweep ran with.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SweepParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dims: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bases: Option<Vec<String>>,
}

impl SweepParams {
    fn range(range: &RangeInclusive<usize>) -> Self {
        SweepParams {
            min_n: Some(*range.start()),
            max_n: Some(*range.end()),
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepFailure {
    pub element: String,
    pub expected: String,
    pub got: String,
}

/// One checked element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub suite: Suite,
    pub n: usize,
    pub element: String,
    pub fix_size: Option<usize>,
    pub bound: Option<usize>,
    pub constructive_len: Option<usize>,
    pub oracle_len: Option<usize>,
    pub status: RowStatus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RowStatus {
    Ok,
    Fail,
}

/// Outcome of one sweep. The suite passed iff `failures` is empty.
#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub suite: Suite,
    pub params: SweepParams,
    pub checked: usize,
    pub passed: bool,
    pub failures: Vec<SweepFailure>,
    /// Largest `bound - oracle_len` seen, where both exist.
    pub max_gap: Option<usize>,
    /// Facts the suite established that are not per-element rows.
    pub notes: Vec<String>,
    pub rows: Vec<SweepRow>,
    /// Not serialized, so reports stay byte-identical across runs.
    #[serde(skip)]
    pub wall_time: Duration,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Per-element result before merging.
struct Check {
    row: SweepRow,
    failures: Vec<SweepFailure>,
}

impl Check {
    fn new(suite: Suite, n: usize, element: String) -> Self {
        Check {
            row: SweepRow {
                suite,
                n,
                element,
                fix_size: None,
                bound: None,
                constructive_len: None,
                oracle_len: None,
                status: RowStatus::Ok,
            },
            failures: Vec::new(),
        }
    }

    fn expect(&mut self, ok: bool, expected: impl fmt::Display, got: impl fmt::Display) {
        if !ok {
            self.failures.push(SweepFailure {
                element: self.row.element.clone(),
                expected: expected.to_string(),
                got: got.to_string(),
            });
        }
    }

    fn fail(&mut self, expected: impl fmt::Display, got: impl fmt::Display) {
        self.expect(false, expected, got);
    }
}

struct Builder {
    suite: Suite,
    params: SweepParams,
    rows: Vec<SweepRow>,
    failures: Vec<SweepFailure>,
    notes: Vec<String>,
    started: Instant,
}

impl Builder {
    fn new(suite: Suite, params: SweepParams) -> Self {
        Builder {
            suite,
            params,
            rows: Vec::new(),
            failures: Vec::new(),
            notes: Vec::new(),
            started: Instant::now(),
        }
    }

    fn extend(&mut self, checks: Vec<Check>) {
        for mut c in checks {
            if !c.failures.is_empty() {
                c.row.status = RowStatus::Fail;
            }
            self.failures.append(&mut c.failures);
            self.rows.push(c.row);
        }
    }

    /// A failure about the domain as a whole rather than one element.
    fn global(&mut self, ok: bool, element: String, expected: impl fmt::Display, got: impl fmt::Display) {
        if !ok {
            self.failures.push(SweepFailure {
                element,
                expected: expected.to_string(),
                got: got.to_string(),
            });
        }
    }

    fn finish(self) -> SweepReport {
        let max_gap = self
            .rows
            .iter()
            .filter_map(|r| Some(r.bound?.saturating_sub(r.oracle_len?)))
            .max();
        SweepReport {
            suite: self.suite,
            params: self.params,
            checked: self.rows.len(),
            passed: self.failures.is_empty(),
            failures: self.failures,
            max_gap,
            notes: self.notes,
            rows: self.rows,
            wall_time: self.started.elapsed(),
        }
    }
}

fn check_range(range: &RangeInclusive<usize>) -> Result<()> {
    if range.is_empty() || *range.start() < 1 {
        return Err(Error::Parse(format!(
            "degree range {}..={} is empty or starts below 1",
            range.start(),
            range.end()
        )));
    }
    Ok(())
}

fn compose_all(n: usize, factors: &[Transformation]) -> Transformation {
    factors
        .iter()
        .fold(Transformation::identity(n), |acc, f| acc.compose(f))
}

fn oracle_allowed(n: usize, caps: &SizeCaps) -> Result<bool> {
    if n > ORACLE_SWEEP_MAX_DEGREE {
        return Ok(false);
    }
    caps::check("oracle degree", n, caps.oracle_degree)?;
    Ok(true)
}

/// Quasi-identity factorization of every singular non-identity map.
///
/// Up to degree 5 the breadth-first oracle over T_n also supplies the
/// minimal length, and the submonoid generated by the quasi-identities is
/// compared with the singular maps plus the identity.
pub fn sweep_howie(range: RangeInclusive<usize>, caps: &SizeCaps) -> Result<SweepReport> {
    check_range(&range)?;
    let mut b = Builder::new(Suite::Howie, SweepParams::range(&range));
    for n in range {
        let m = full_transformation_monoid(n, caps)?;
        let bfs = if oracle_allowed(n, caps)? {
            let gens: Vec<usize> = (0..m.size())
                .filter(|&i| m.element(i).is_quasi_identity())
                .collect();
            Some(CayleyBfs::run(&m, &gens))
        } else {
            None
        };
        let checks: Vec<Check> = (0..m.size())
            .into_par_iter()
            .filter_map(|i| {
                let t = m.element(i);
                (t.is_singular() && !t.is_identity()).then(|| howie_check(&m, bfs.as_ref(), i, t))
            })
            .collect();
        b.extend(checks);

        if let Some(bfs) = &bfs {
            let reachable = bfs.reachable();
            let expected: Vec<usize> = (0..m.size())
                .filter(|&i| {
                    let t = m.element(i);
                    t.is_singular() || t.is_identity()
                })
                .collect();
            let got: Vec<usize> = reachable.ones().collect();
            b.global(
                got == expected,
                format!("T_{n} generated by quasi-identities"),
                format!("{} elements (singular maps and the identity)", expected.len()),
                format!("{} elements", got.len()),
            );
            b.notes.push(format!(
                "T_{n}: quasi-identities generate exactly the {} singular maps and the identity",
                expected.len() - 1
            ));
        }
    }
    Ok(b.finish())
}

fn howie_check(
    m: &TransformationMonoid,
    bfs: Option<&CayleyBfs>,
    i: usize,
    t: Transformation,
) -> Check {
    let n = t.degree();
    let mut c = Check::new(Suite::Howie, n, t.to_string());
    let fix = t.fix_set().len();
    let bound = 2 * (n - fix) - 1;
    c.row.fix_size = Some(fix);
    c.row.bound = Some(bound);
    match howie_factor(&t) {
        Err(e) => c.fail("a factorization", e),
        Ok(f) => {
            let len = f.len();
            c.row.constructive_len = Some(len);
            c.expect(f.factors.iter().all(|q| q.is_quasi_identity()), "quasi-identity factors", "a non-quasi-identity factor");
            let product = compose_all(n, &f.factors);
            c.expect(product == t, &t, &product);
            c.expect(len <= bound, format!("length <= {bound}"), len);
            if let Some(bfs) = bfs {
                match bfs.distance(i) {
                    None => c.fail("reachable by quasi-identities", "unreachable"),
                    Some(d) => {
                        c.row.oracle_len = Some(d);
                        c.expect(d <= len, format!("oracle <= {len}"), d);
                        let word = bfs.witness(i).unwrap_or_default();
                        c.expect(monoid::product(m, &word) == i && word.len() == d, "witness recomposes", "bad witness");
                    }
                }
            }
        }
    }
    c
}

/// Transposition factorization of every non-identity permutation, the
/// definitional quark test on the permutation premonoid, and (up to degree
/// 5) the oracle over transpositions.
pub fn sweep_transpositions(range: RangeInclusive<usize>, caps: &SizeCaps) -> Result<SweepReport> {
    check_range(&range)?;
    let mut b = Builder::new(Suite::Transpositions, SweepParams::range(&range));
    for n in range {
        let pm = RfixPremonoidSpec::new(n, RfixRestriction::Invertible).build(caps)?;
        let m = pm.monoid();
        let bfs = if oracle_allowed(n, caps)? {
            let gens: Vec<usize> = (0..m.size())
                .filter(|&i| m.permutation(i).is_some_and(|p| p.is_transposition()))
                .collect();
            Some(CayleyBfs::run(m, &gens))
        } else {
            None
        };
        let checks: Vec<Check> = (0..m.size())
            .into_par_iter()
            .filter(|&i| i != m.identity())
            .map(|i| {
                let p = m.permutation(i).expect("symmetric group element");
                let mut c = Check::new(Suite::Transpositions, n, p.as_transformation().to_string());
                let fix = p.fix_set().len();
                let bound = n - fix - 1;
                c.row.fix_size = Some(fix);
                c.row.bound = Some(bound);
                c.expect(
                    pm.is_quark(i) == p.is_transposition(),
                    format!("quark = {}", p.is_transposition()),
                    format!("quark = {}", pm.is_quark(i)),
                );
                match transposition_factor(&p) {
                    Err(e) => c.fail("a factorization", e),
                    Ok(f) => {
                        let len = f.len();
                        c.row.constructive_len = Some(len);
                        c.expect(f.factors.iter().all(Permutation::is_transposition), "transposition factors", "a non-transposition factor");
                        let product = f
                            .factors
                            .iter()
                            .fold(Permutation::identity(n), |acc, g| acc.compose(g));
                        c.expect(product == p, p.as_transformation(), product.as_transformation());
                        c.expect(len <= bound, format!("length <= {bound}"), len);
                        if let Some(bfs) = &bfs {
                            match bfs.distance(i) {
                                None => c.fail("reachable by transpositions", "unreachable"),
                                Some(d) => {
                                    c.row.oracle_len = Some(d);
                                    c.expect(d <= len, format!("oracle <= {len}"), d);
                                }
                            }
                        }
                    }
                }
                c
            })
            .collect();
        b.extend(checks);
        if let Some(bfs) = &bfs {
            let count = bfs.reachable().count_ones(..);
            b.global(count == m.size(), format!("S_{n} generated by transpositions"), m.size(), count);
        }
    }
    Ok(b.finish())
}

/// Seed of trial `t` in dimension `n`.
pub fn cd_trial_seed(seed: u64, n: usize, t: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ ((n as u64) << 32) ^ t as u64
}

/// Reflection factorization of seeded random orthogonal matrices: trial
/// `t` in dimension `n` multiplies `t mod (n+1)` random reflections, so
/// trial 0 is always the identity.
pub fn sweep_cd(dims: &[usize], trials: usize, seed: u64) -> Result<SweepReport> {
    if let Some(&bad) = dims.iter().find(|&&n| n == 0) {
        return Err(Error::Parse(format!("dimension {bad} must be at least 1")));
    }
    let mut b = Builder::new(
        Suite::Cd,
        SweepParams {
            dims: Some(dims.to_vec()),
            trials: Some(trials),
            seed: Some(seed),
            ..Default::default()
        },
    );
    for &n in dims {
        let checks: Vec<Check> = (0..trials)
            .into_par_iter()
            .map(|t| {
                let k = t % (n + 1);
                let f = random_rational_orthogonal(n, k, cd_trial_seed(seed, n, t));
                cd_check(&f)
            })
            .collect();
        b.extend(checks);
    }
    Ok(b.finish())
}

fn cd_check(f: &QMatrix) -> Check {
    let n = f.dim();
    let mut c = Check::new(Suite::Cd, n, f.to_json());
    let fix = f.fix_rank();
    c.row.fix_size = Some(fix);
    c.row.bound = Some(n - fix);
    c.expect(is_orthogonal(f), "orthogonal input", "non-orthogonal input");
    match cartan_dieudonne_factor(f) {
        Err(e) => c.fail("a factorization", e),
        Ok(fact) => {
            let len = fact.len();
            c.row.constructive_len = Some(len);
            c.expect(fact.factors.iter().all(is_reflection), "reflection factors", "a non-reflection factor");
            let mut product = QMatrix::identity(n);
            for g in &fact.factors {
                product = product.matmul(g).expect("same dimension");
            }
            c.expect(&product == f, f.to_json(), product.to_json());
            c.expect(len + fix <= n, format!("length <= {}", n - fix), len);
            if f.is_identity() {
                c.expect(len == 0, "empty product", len);
            }
        }
    }
    c
}

/// Definitional classification on the singular r.fix premonoid: quarks are
/// the quasi-identities, the identity is the only unit, and (up to degree 4)
/// the degree-2 irreducibles are the quasi-identities.
pub fn sweep_characterizations(range: RangeInclusive<usize>, caps: &SizeCaps) -> Result<SweepReport> {
    check_range(&range)?;
    let mut b = Builder::new(Suite::Characterizations, SweepParams::range(&range));
    for n in range {
        let pm = RfixPremonoidSpec::new(n, RfixRestriction::Singular).build(caps)?;
        let m = pm.monoid();
        let units = pm.units();
        b.global(
            units == vec![m.identity()],
            format!("units of singular T_{n}"),
            "the identity only",
            format!("{} units", units.len()),
        );
        let scan_irreducibles = n <= IRREDUCIBLE_SCAN_MAX_DEGREE;
        let checks: Vec<Check> = (0..pm.size())
            .into_par_iter()
            .map(|i| {
                let t = m.element(i);
                let mut c = Check::new(Suite::Characterizations, n, t.to_string());
                c.row.fix_size = Some(t.fix_set().len());
                let qi = t.is_quasi_identity();
                let quark = pm.is_quark(i);
                c.expect(quark == qi, format!("quark = {qi}"), format!("quark = {quark}"));
                if scan_irreducibles {
                    match pm.is_irreducible(i, 2) {
                        Ok(irr) => c.expect(irr == qi, format!("irreducible = {qi}"), format!("irreducible = {irr}")),
                        Err(e) => c.fail("an irreducibility verdict", e),
                    }
                }
                c
            })
            .collect();
        b.extend(checks);
        b.notes.push(format!(
            "singular T_{n}: quarks checked{}",
            if scan_irreducibles { ", degree-2 irreducibles checked" } else { "" }
        ));
    }
    Ok(b.finish())
}

/// The definitional r.fix preorder equals the fix-set comparator on T_n.
pub fn sweep_fix_lemma(range: RangeInclusive<usize>, caps: &SizeCaps) -> Result<SweepReport> {
    check_range(&range)?;
    caps::check("fix-lemma degree", *range.end(), FIX_LEMMA_MAX_DEGREE)?;
    let mut b = Builder::new(Suite::FixLemma, SweepParams::range(&range));
    for n in range {
        let m = full_transformation_monoid(n, caps)?;
        let definitional = rfix_preorder(&m, caps)?;
        let closed = fix_preorder(n, caps)?;
        let checks: Vec<Check> = (0..m.size())
            .into_par_iter()
            .map(|f| {
                let t = m.element(f);
                let mut c = Check::new(Suite::FixLemma, n, t.to_string());
                c.row.fix_size = Some(t.fix_set().len());
                for g in 0..m.size() {
                    let (a, b) = (definitional.le(f, g), closed.le(f, g));
                    if a != b {
                        c.fail(format!("rfix: {} <= {} is {a}", t, m.element(g)), format!("fix: {b}"));
                    }
                }
                c
            })
            .collect();
        b.extend(checks);
    }
    Ok(b.finish())
}

/// Heights from the longest-chain computation against the closed forms on
/// the singular and permutation premonoids.
pub fn sweep_heights(range: RangeInclusive<usize>, caps: &SizeCaps) -> Result<SweepReport> {
    check_range(&range)?;
    let mut b = Builder::new(Suite::Heights, SweepParams::range(&range));
    for n in range {
        for restriction in [RfixRestriction::Singular, RfixRestriction::Invertible] {
            let pm = RfixPremonoidSpec::new(n, restriction).build(caps)?;
            let heights = pm.height()?;
            let m = pm.monoid();
            let checks: Vec<Check> = (0..pm.size())
                .into_par_iter()
                .map(|i| {
                    let t = m.element(i);
                    let mut c = Check::new(Suite::Heights, n, t.to_string());
                    c.row.fix_size = Some(t.fix_set().len());
                    let expected = match m.permutation(i) {
                        Some(p) => permutation_height_formula(&p),
                        None => singular_height_formula(&t).expect("singular element"),
                    };
                    let got = heights.get(i);
                    c.expect(got == expected, format!("height {expected}"), format!("height {got}"));
                    c.expect((got == 0) == pm.is_unit(i), "height 0 iff unit", format!("height {got}"));
                    c.expect((got == 1) == pm.is_quark(i), "height 1 iff quark", format!("height {got}"));
                    c
                })
                .collect();
            b.extend(checks);
        }
    }
    Ok(b.finish())
}

/// Base monoids understood by [`sweep_power_monoids`].
pub fn base_monoid(name: &str, caps: &SizeCaps) -> Result<TableMonoid> {
    match name {
        "z2xz2" => {
            let z2 = TableMonoid::cyclic_group(2)?;
            TableMonoid::direct_product(&z2, &z2, caps)
        }
        "s3" => TableMonoid::materialize(&symmetric_group(3, caps)?, caps),
        _ => {
            let k = name
                .strip_prefix('z')
                .and_then(|k| k.parse::<usize>().ok())
                .filter(|&k| k >= 1)
                .ok_or_else(|| Error::Parse(format!("unknown base monoid {name:?} (expected z<k>, z2xz2 or s3)")))?;
            caps::check("power monoid base", k, caps.power_base)?;
            TableMonoid::cyclic_group(k)
        }
    }
}

/// Reduced power monoids: Dedekind-finite, trivial unit group, a valid
/// divisibility preorder, and every non-unit factors into irreducibles.
pub fn sweep_power_monoids(bases: &[&str], caps: &SizeCaps) -> Result<SweepReport> {
    let mut b = Builder::new(
        Suite::PowerMonoids,
        SweepParams {
            bases: Some(bases.iter().map(|s| s.to_string()).collect()),
            ..Default::default()
        },
    );
    for &name in bases {
        let base = base_monoid(name, caps)?;
        let pm = reduced_power_monoid(&base, caps)?;
        let size = pm.size();
        let where_ = |what: &str| format!("P({name}): {what}");

        let df = predicates::dedekind_finite_witness(&pm);
        b.global(df.is_none(), where_("Dedekind-finite"), "no witness", format!("{df:?}"));
        let units: Vec<usize> = predicates::units(&pm).ones().collect();
        b.global(units == vec![pm.identity()], where_("unit group"), "{1}", format!("{units:?}"));

        let order = divisibility_preorder(&pm, caps)?;
        let report = validate_preorder(&order);
        b.global(report.is_valid(), where_("divisibility preorder"), "valid", format!("{report:?}"));
        let premonoid = Premonoid::new(&pm, order)?;
        b.global(
            premonoid.units() == vec![pm.identity()],
            where_("divisibility units"),
            "{1}",
            format!("{:?}", premonoid.units()),
        );

        let checks: Vec<Check> = premonoid
            .non_units()
            .into_par_iter()
            .map(|x| {
                let mut c = Check::new(Suite::PowerMonoids, size, format!("{name}:{}", pm.label(x)));
                match premonoid.factor_into_irreducibles(x, 2) {
                    Err(e) => c.fail("a factorization into irreducibles", e),
                    Ok(f) => {
                        c.row.constructive_len = Some(f.len());
                        c.expect(monoid::product(&pm, &f.factors) == x, pm.label(x), pm.label(monoid::product(&pm, &f.factors)));
                        let all_irreducible = f
                            .factors
                            .iter()
                            .all(|&y| premonoid.is_irreducible(y, 2).unwrap_or(false));
                        c.expect(all_irreducible, "irreducible factors", "a reducible factor");
                    }
                }
                c
            })
            .collect();
        b.extend(checks);
        b.notes.push(format!("P({name}) has {size} elements"));
    }
    Ok(b.finish())
}

/// The bounded quark engine with degree `s` on singular T_n.
pub fn sweep_quark_engine(range: RangeInclusive<usize>, s: usize, caps: &SizeCaps) -> Result<SweepReport> {
    check_range(&range)?;
    crate::premonoid::check_degree(s)?;
    let mut params = SweepParams::range(&range);
    params.s = Some(s);
    let mut b = Builder::new(Suite::QuarkEngine, params);
    for n in range {
        let pm = RfixPremonoidSpec::new(n, RfixRestriction::Singular).build(caps)?;
        let heights = pm.height()?;
        let m = pm.monoid();
        let checks: Vec<Check> = pm
            .non_units()
            .into_par_iter()
            .map(|x| {
                let t = m.element(x);
                let mut c = Check::new(Suite::QuarkEngine, n, t.to_string());
                c.row.fix_size = Some(t.fix_set().len());
                let h = heights.get(x);
                let bound = (s - 1) * h - (s - 2);
                c.row.bound = Some(bound);
                match pm.factor_into_quarks_bounded_with(&heights, x, s) {
                    Err(e) => c.fail("a bounded quark factorization", e),
                    Ok(f) => {
                        c.row.constructive_len = Some(f.len());
                        c.expect(f.len() <= bound, format!("length <= {bound}"), f.len());
                        c.expect(monoid::product(m, &f.factors) == x, &t, m.element(monoid::product(m, &f.factors)));
                        c.expect(f.factors.iter().all(|&q| pm.is_quark(q)), "quark factors", "a non-quark factor");
                        for step in &f.trace {
                            let hc = step.heights.as_ref();
                            let sum: usize = step.parts.iter().map(|&p| heights.get(p)).sum();
                            let limit = heights.get(step.element) + step.parts.len() - 2;
                            c.expect(
                                sum <= limit && hc.is_some_and(|hc| hc.holds()),
                                format!("step {}: height sum <= {limit}", m.element(step.element)),
                                sum,
                            );
                            let ok = step.parts.len() <= s
                                && step.parts.iter().all(|&p| pm.order().lt(p, step.element));
                            c.expect(ok, "parts strictly below", "a part not strictly below");
                        }
                    }
                }
                c
            })
            .collect();
        b.extend(checks);
    }
    Ok(b.finish())
}

/// T_3 is Dedekind-finite but neither acyclic nor cancellative; conjugation
/// by a permutation sends quasi-identities to quasi-identities with the same
/// number of fixed points.
pub fn sweep_predicates(caps: &SizeCaps) -> Result<SweepReport> {
    let mut b = Builder::new(
        Suite::Predicates,
        SweepParams {
            min_n: Some(1),
            max_n: Some(CONJUGATION_MAX_DEGREE),
            ..Default::default()
        },
    );
    let t3 = full_transformation_monoid(3, caps)?;
    let label = |w: [usize; 3]| w.iter().map(|&i| t3.element(i).to_string()).collect::<Vec<_>>().join(" ");

    let df = predicates::dedekind_finite_witness(&t3);
    b.global(df.is_none(), "T_3 Dedekind-finite".into(), "no witness", format!("{df:?}"));
    match predicates::acyclic_witness(&t3) {
        Some(w) => b.notes.push(format!("T_3 is not acyclic: u x v = x with (u, x, v) = {}", label(w))),
        None => b.global(false, "T_3 acyclic".into(), "a witness", "none"),
    }
    match predicates::cancellative_witness(&t3) {
        Some(w) => b.notes.push(format!("T_3 is not cancellative: witness (x, y, z) = {}", label(w))),
        None => b.global(false, "T_3 cancellative".into(), "a witness", "none"),
    }
    b.notes.push("T_3 is Dedekind-finite".into());

    for n in 1..=CONJUGATION_MAX_DEGREE {
        let s = symmetric_group(n, caps)?;
        let m = full_transformation_monoid(n, caps)?;
        let perms: Vec<Permutation> = (0..s.size()).filter_map(|i| s.permutation(i)).collect();
        let checks: Vec<Check> = (0..m.size())
            .into_par_iter()
            .filter_map(|i| {
                let q = m.element(i);
                q.is_quasi_identity().then(|| {
                    let mut c = Check::new(Suite::Predicates, n, q.to_string());
                    c.row.fix_size = Some(q.fix_set().len());
                    for sigma in &perms {
                        let conj = q.conjugate_by(sigma);
                        c.expect(
                            conj.is_quasi_identity() && conj.fix_set().len() == q.fix_set().len(),
                            format!("conjugate by {} is a quasi-identity", sigma.as_transformation()),
                            &conj,
                        );
                    }
                    c
                })
            })
            .collect();
        b.extend(checks);
    }
    Ok(b.finish())
}

/// Runs a suite with its default parameters.
pub fn run_default(suite: Suite, caps: &SizeCaps) -> Result<SweepReport> {
    match suite {
        Suite::Howie => sweep_howie(2..=6, caps),
        Suite::Transpositions => sweep_transpositions(2..=7, caps),
        Suite::Cd => sweep_cd(&[2, 3, 4, 5], 100, DEFAULT_SEED),
        Suite::Characterizations => sweep_characterizations(2..=5, caps),
        Suite::FixLemma => sweep_fix_lemma(2..=4, caps),
        Suite::Heights => sweep_heights(2..=5, caps),
        Suite::PowerMonoids => sweep_power_monoids(&DEFAULT_BASES, caps),
        Suite::QuarkEngine => sweep_quark_engine(3..=4, 3, caps),
        Suite::Predicates => sweep_predicates(caps),
    }
}

pub const DEFAULT_SEED: u64 = 20_240_601;
pub const DEFAULT_BASES: [&str; 4] = ["z2", "z3", "z2xz2", "s3"];

#[cfg(test)]
mod tests {
    use super::*;

    fn caps() -> SizeCaps {
        SizeCaps::default()
    }

    #[test]
    fn howie_t3() {
        let r = sweep_howie(3..=3, &caps()).unwrap();
        assert_eq!(r.checked, 21);
        assert!(r.passed(), "{:?}", r.failures);
        let row = r.rows.iter().find(|row| row.element == "[2,3,2]").unwrap();
        assert_eq!((row.constructive_len, row.oracle_len, row.bound), (Some(3), Some(3), Some(5)));
    }

    #[test]
    fn transpositions_s4() {
        let r = sweep_transpositions(4..=4, &caps()).unwrap();
        assert_eq!(r.checked, 23);
        assert!(r.passed(), "{:?}", r.failures);
    }

    #[test]
    fn cd_small() {
        let r = sweep_cd(&[2, 3], 10, 1).unwrap();
        assert_eq!(r.checked, 20);
        assert!(r.passed(), "{:?}", r.failures);
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn bad_ranges() {
        #[allow(clippy::reversed_empty_ranges)]
        let empty = 3..=2;
        assert!(sweep_howie(empty, &caps()).is_err());
        assert!(sweep_fix_lemma(2..=5, &caps()).is_err());
        assert!(base_monoid("q7", &caps()).is_err());
    }
}
