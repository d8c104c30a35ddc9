//! Runnable property suites over every structure in the crate.
//!
//! Each check is exhaustive where the search space fits its budget and falls
//! back to seeded sampling otherwise; the scope string records which.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::boolmat::{self, BoolMatrix};
use crate::counting;
use crate::error::Result;
use crate::kiselman::{Element, RewriteSystem, Word};
use crate::monotone::{self, SetSequence};
use crate::morphisms::{self, Endomorphism};
use crate::subset::Subset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Kiselman,
    Monotone,
    Boolmat,
    Units,
    Morphisms,
    Counting,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Kiselman,
        Suite::Monotone,
        Suite::Boolmat,
        Suite::Units,
        Suite::Morphisms,
        Suite::Counting,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Kiselman => "kiselman",
            Suite::Monotone => "monotone",
            Suite::Boolmat => "boolmat",
            Suite::Units => "units",
            Suite::Morphisms => "morphisms",
            Suite::Counting => "counting",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

pub const DEFAULT_SEED: u64 = 0x6b69_7365;

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    /// Properties are checked for every rank `1..=max_rank` they support.
    pub max_rank: usize,
    pub guard_bits: usize,
    pub max_rules: usize,
    pub max_elements: usize,
    /// Largest number of tuples examined exhaustively before sampling.
    pub exhaustive_budget: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_rank: 3,
            guard_bits: 20,
            max_rules: crate::kiselman::DEFAULT_MAX_RULES,
            max_elements: crate::kiselman::DEFAULT_MAX_ELEMENTS,
            exhaustive_budget: 200_000,
            samples: 20_000,
            seed: DEFAULT_SEED,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub suite: Suite,
    pub id: String,
    pub scope: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u128>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn clear_timing(&mut self) {
        self.wall_time_ms = None;
    }
}

/// Runs the given suites (in order) and collects every check.
pub fn run(suites: &[Suite], cfg: &VerifyConfig) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut checks = Vec::new();
    for &suite in suites {
        checks.extend(run_suite(suite, cfg)?);
    }
    Ok(VerificationReport {
        suite: suites
            .iter()
            .map(|s| s.name())
            .collect::<Vec<_>>()
            .join(","),
        checks,
        wall_time_ms: Some(start.elapsed().as_millis()),
    })
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let mut ctx = Ctx {
        suite,
        cfg,
        rng: ChaCha8Rng::seed_from_u64(cfg.seed ^ suite as u64),
        checks: Vec::new(),
    };
    match suite {
        Suite::Kiselman => kiselman_suite(&mut ctx)?,
        Suite::Monotone => monotone_suite(&mut ctx)?,
        Suite::Boolmat => boolmat_suite(&mut ctx)?,
        Suite::Units => units_suite(&mut ctx)?,
        Suite::Morphisms => morphisms_suite(&mut ctx)?,
        Suite::Counting => counting_suite(&mut ctx)?,
    }
    Ok(ctx.checks)
}

struct Ctx<'a> {
    suite: Suite,
    cfg: &'a VerifyConfig,
    rng: ChaCha8Rng,
    checks: Vec<Check>,
}

/// Index tuples to examine, either all of them or a seeded sample.
struct Plan {
    tuples: Vec<Vec<usize>>,
    scope: String,
}

impl Ctx<'_> {
    fn record(&mut self, id: &str, scope: String, counterexample: Option<String>) {
        self.checks.push(Check {
            suite: self.suite,
            id: id.to_string(),
            scope,
            passed: counterexample.is_none(),
            counterexample,
        });
    }

    fn plan(&mut self, len: usize, arity: u32, label: &str) -> Plan {
        let total = len.checked_pow(arity);
        match total {
            Some(total) if total <= self.cfg.exhaustive_budget => Plan {
                tuples: (0..total)
                    .map(|mut code| {
                        let mut t = vec![0; arity as usize];
                        for slot in t.iter_mut().rev() {
                            *slot = code % len;
                            code /= len;
                        }
                        t
                    })
                    .collect(),
                scope: format!("{label}, exhaustive {total}"),
            },
            _ => Plan {
                tuples: (0..self.cfg.samples)
                    .map(|_| (0..arity).map(|_| self.rng.gen_range(0..len)).collect())
                    .collect(),
                scope: format!("{label}, sampled {}", self.cfg.samples),
            },
        }
    }
}

fn first_failure<I, F>(items: I, mut bad: F) -> Result<Option<String>>
where
    I: IntoIterator,
    F: FnMut(I::Item) -> Result<Option<String>>,
{
    for item in items {
        if let Some(cx) = bad(item)? {
            return Ok(Some(cx));
        }
    }
    Ok(None)
}

fn kiselman_suite(ctx: &mut Ctx) -> Result<()> {
    for n in 1..=ctx.cfg.max_rank {
        let rs = RewriteSystem::completed(n, ctx.cfg.max_rules)?;
        let label = format!("n={n}");

        let unresolved = rs.unresolved_critical_pairs();
        let cx = unresolved
            .first()
            .map(|cp| format!("overlap {} -> {} / {}", cp.overlap, cp.left, cp.right));
        ctx.record(
            "completion.critical_pairs",
            format!(
                "{label}, {} pairs, {} rules",
                rs.critical_pairs().len(),
                rs.rules().len()
            ),
            cx,
        );

        let presentation = RewriteSystem::presentation(n)?;
        let cx = first_failure(presentation.rules(), |rule| {
            Ok((rs.normal_form(&rule.lhs) != rs.normal_form(&rule.rhs))
                .then(|| format!("{} vs {}", rule.lhs, rule.rhs)))
        })?;
        ctx.record("completion.defining_relations", label.clone(), cx);

        let elements = rs.enumerate_elements(ctx.cfg.max_elements)?;

        // content is constant on classes: every word of bounded length
        let max_len = (1..=8)
            .take_while(|&l| n.pow(l) <= ctx.cfg.exhaustive_budget)
            .last()
            .unwrap_or(1);
        let words = all_words(n, max_len as usize);
        let cx = first_failure(&words, |w| {
            let nf = rs.normal_form(w);
            Ok((nf.content() != w.content()).then(|| format!("{w} -> {nf}")))
        })?;
        ctx.record(
            "content.well_defined",
            format!("{label}, all {} words of length <= {max_len}", words.len()),
            cx,
        );

        let plan = ctx.plan(elements.len(), 2, &label);
        let cx = first_failure(&plan.tuples, |t| {
            let (a, b) = (&elements[t[0]], &elements[t[1]]);
            let ab = rs.multiply(a, b)?;
            Ok((ab.content() != a.content().union(b.content())).then(|| format!("a={a}, b={b}")))
        })?;
        ctx.record("content.epimorphism", plan.scope, cx);

        let idempotents: Vec<&Element> = elements
            .iter()
            .filter(|e| rs.is_idempotent(e).unwrap_or(false))
            .collect();
        let mut cx = None;
        if idempotents.len() != 1 << n {
            cx = Some(format!("{} idempotents", idempotents.len()));
        }
        let mut forms = BTreeSet::new();
        for x in Subset::all(n) {
            let w = Word::idempotent(x);
            let e = rs.reduce(&w)?;
            if e.nf() != &w || !rs.is_idempotent(&e)? || !forms.insert(e.clone()) {
                cx.get_or_insert_with(|| format!("e_{x} = {e}"));
            }
        }
        for e in &idempotents {
            if e.nf() != &Word::idempotent(e.content()) {
                cx.get_or_insert_with(|| format!("idempotent {e} is not e_X"));
            }
        }
        ctx.record(
            "idempotents.census",
            format!("{label}, |K_n| = {}", elements.len()),
            cx,
        );

        let subsets: Vec<Subset> = Subset::all(n).collect();
        let plan = ctx.plan(subsets.len(), 2, &label);
        let cx = first_failure(&plan.tuples, |t| {
            let (x, y) = (subsets[t[0]], subsets[t[1]]);
            let (a, b, c) = rs.tfae_check(x, y)?;
            Ok((a != b || b != c).then(|| format!("X={x}, Y={y}: ({a},{b},{c})")))
        })?;
        ctx.record("idempotents.tfae", plan.scope.clone(), cx);

        let cx = first_failure(&plan.tuples, |t| {
            let (x, y) = (subsets[t[0]], subsets[t[1]]);
            let (a, b) = rs.braid_check(x, y)?;
            Ok((a != b).then(|| format!("X={x}, Y={y}: ({a},{b})")))
        })?;
        ctx.record("idempotents.braid", plan.scope, cx);

        let plan = ctx.plan(elements.len(), 3, &label);
        let cx = first_failure(&plan.tuples, |t| {
            let (a, b, c) = (&elements[t[0]], &elements[t[1]], &elements[t[2]]);
            let left = rs.multiply(&rs.multiply(a, b)?, c)?;
            let right = rs.multiply(a, &rs.multiply(b, c)?)?;
            Ok((left != right).then(|| format!("({a},{b},{c})")))
        })?;
        ctx.record("multiply.associative", plan.scope, cx);
    }
    Ok(())
}

fn all_words(n: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| (1..=n).map(move |k| w.concat(&Word::new(n, [k]).expect("in range"))))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn monotone_suite(ctx: &mut Ctx) -> Result<()> {
    for n in 1..=ctx.cfg.max_rank.min(monotone::DEFAULT_ENUMERATION_GUARD) {
        let label = format!("n={n}");
        let mn = monotone::enumerate(n, monotone::DEFAULT_ENUMERATION_GUARD)?;
        let unit = SetSequence::unit(n)?;

        let cx = first_failure(&mn, |s| {
            Ok((s.star(&unit)? != *s || unit.star(s)? != *s).then(|| s.to_string()))
        })?;
        ctx.record(
            "monoid.unit",
            format!("{label}, exhaustive {}", mn.len()),
            cx,
        );

        let plan = ctx.plan(mn.len(), 2, &label);
        let cx = first_failure(&plan.tuples, |t| {
            let z = mn[t[0]].star(&mn[t[1]])?;
            Ok((!z.is_monotone()).then(|| format!("{} * {}", mn[t[0]], mn[t[1]])))
        })?;
        ctx.record("monoid.closure", plan.scope, cx);

        let plan = ctx.plan(mn.len(), 3, &label);
        let cx = first_failure(&plan.tuples, |t| {
            let (x, y, z) = (&mn[t[0]], &mn[t[1]], &mn[t[2]]);
            Ok((x.star(y)?.star(z)? != x.star(&y.star(z)?)?).then(|| format!("({x},{y},{z})")))
        })?;
        ctx.record("monoid.associative", plan.scope, cx);

        let dn = boolmat::count_dn(n, boolmat::DEFAULT_ENUMERATION_GUARD)?;
        ctx.record(
            "cardinality.matches_dn",
            label,
            (mn.len() as u64 != dn).then(|| format!("|M_n| = {}, |D_n| = {dn}", mn.len())),
        );
    }
    Ok(())
}

fn boolmat_suite(ctx: &mut Ctx) -> Result<()> {
    for n in 1..=ctx.cfg.max_rank.min(4) {
        let label = format!("n={n}");
        let dn = boolmat::enumerate_dn(n, boolmat::DEFAULT_ENUMERATION_GUARD)?;
        let id = BoolMatrix::identity(n)?;

        let cx = first_failure(&dn, |m| {
            Ok((id.mul(m)? != *m || m.mul(&id)? != *m).then(|| m.to_string()))
        })?;
        ctx.record(
            "monoid.unit",
            format!("{label}, exhaustive {}", dn.len()),
            cx,
        );

        let plan = ctx.plan(dn.len(), 2, &label);
        let cx = first_failure(&plan.tuples, |t| {
            let p = dn[t[0]].mul(&dn[t[1]])?;
            Ok((!p.avoids_pattern()).then(|| format!("{} * {}", dn[t[0]], dn[t[1]])))
        })?;
        ctx.record("monoid.closure", plan.scope, cx);

        let plan = ctx.plan(dn.len(), 3, &label);
        let cx = first_failure(&plan.tuples, |t| {
            let (a, b, c) = (&dn[t[0]], &dn[t[1]], &dn[t[2]]);
            Ok((a.mul(b)?.mul(c)? != a.mul(&b.mul(c)?)?).then(|| format!("({a},{b},{c})")))
        })?;
        ctx.record("monoid.associative", plan.scope, cx);
    }

    let mut shapes = 0;
    let mut cx = None;
    for rows in 1..=16usize {
        for cols in 1..=16 / rows {
            shapes += 1;
            for flat in 0..1u64 << (rows * cols) {
                let m = BoolMatrix::from_flat(rows, cols, flat)?;
                if m.avoids_pattern() != m.transpose().avoids_pattern() {
                    cx.get_or_insert_with(|| m.to_string());
                }
            }
        }
    }
    ctx.record(
        "pattern.transpose_symmetric",
        format!("all matrices of {shapes} shapes with mn <= 16"),
        cx,
    );

    let mut cx = None;
    for n in 1..=6 {
        let id = BoolMatrix::identity(n)?;
        for p in boolmat::permutations(n) {
            let m = BoolMatrix::permutation(&p)?;
            if m.avoids_pattern() != (m == id) {
                cx.get_or_insert_with(|| m.to_string());
            }
        }
    }
    ctx.record(
        "pattern.identity_only_permutation",
        "n<=6, all n! permutations".into(),
        cx,
    );
    Ok(())
}

fn units_suite(ctx: &mut Ctx) -> Result<()> {
    for n in 1..=ctx.cfg.max_rank.min(boolmat::DEFAULT_ENUMERATION_GUARD) {
        let id = vec![BoolMatrix::identity(n)?];
        let units = boolmat::find_units(n, boolmat::DEFAULT_ENUMERATION_GUARD)?;
        ctx.record(
            "units.identity_only",
            format!("n={n}, permutation filter"),
            (units != id).then(|| format!("{units:?}")),
        );
        if n <= boolmat::EXHAUSTIVE_UNIT_GUARD {
            let slow = boolmat::find_units_exhaustive(n)?;
            ctx.record(
                "units.exhaustive_pair_search",
                format!("n={n}, all pairs of D_n"),
                (slow != id).then(|| format!("{slow:?}")),
            );
        }
    }
    Ok(())
}

fn morphisms_suite(ctx: &mut Ctx) -> Result<()> {
    for n in 1..=ctx.cfg.max_rank.min(morphisms::DEFAULT_BRUTE_FORCE_GUARD) {
        let label = format!("n={n}");
        let rs = RewriteSystem::completed(n, ctx.cfg.max_rules)?;
        let ends = morphisms::brute_force_enumerate_end(&rs, morphisms::DEFAULT_BRUTE_FORCE_GUARD)?;
        let mn = monotone::enumerate(n, monotone::DEFAULT_ENUMERATION_GUARD)?;
        let via_m = mn
            .iter()
            .map(Endomorphism::from_sequence)
            .collect::<Result<Vec<_>>>()?;
        let dn = boolmat::count_dn(n, boolmat::DEFAULT_ENUMERATION_GUARD)?;
        let cx = (ends != via_m || ends.len() as u64 != dn)
            .then(|| format!("brute {} / monotone {} / D_n {dn}", ends.len(), via_m.len()));
        ctx.record(
            "phi.bijection",
            format!("{label}, |End| = {}", ends.len()),
            cx,
        );

        let plan = ctx.plan(ends.len(), 2, &label);
        let cx = first_failure(&plan.tuples, |t| {
            let (g, f) = (&ends[t[0]], &ends[t[1]]);
            let lhs = g.compose(f)?.phi();
            let rhs = g.phi().star(&f.phi())?;
            Ok((lhs != rhs).then(|| format!("g={g}, f={f}")))
        })?;
        ctx.record("phi.homomorphism", plan.scope.clone(), cx);

        let cx = first_failure(&plan.tuples, |t| {
            let (g, f) = (&ends[t[0]], &ends[t[1]]);
            Ok((g.compose(f)? != g.compose_via_apply(&rs, f)?).then(|| format!("g={g}, f={f}")))
        })?;
        ctx.record("compose.union_matches_substitution", plan.scope, cx);

        let plan = ctx.plan(mn.len(), 2, &label);
        let cx = first_failure(&plan.tuples, |t| {
            let (s, u) = (&mn[t[0]], &mn[t[1]]);
            let lhs = morphisms::psi(&s.star(u)?)?;
            let rhs = morphisms::psi(s)?.mul(&morphisms::psi(u)?)?;
            Ok((lhs != rhs).then(|| format!("s={s}, t={u}")))
        })?;
        ctx.record("psi.homomorphism", plan.scope, cx);

        let cx = first_failure(&mn, |s| {
            let m = morphisms::psi(s)?;
            Ok((morphisms::psi_inv(&m)? != *s || !m.is_in_dn()).then(|| s.to_string()))
        })?;
        ctx.record(
            "psi.round_trip_mn",
            format!("{label}, exhaustive {}", mn.len()),
            cx,
        );

        let dn = boolmat::enumerate_dn(n, boolmat::DEFAULT_ENUMERATION_GUARD)?;
        let cx = first_failure(&dn, |m| {
            Ok((morphisms::psi(&morphisms::psi_inv(m)?)? != *m).then(|| m.to_string()))
        })?;
        ctx.record(
            "psi.round_trip_dn",
            format!("{label}, exhaustive {}", dn.len()),
            cx,
        );

        let cx = first_failure(&ends, |f| {
            first_failure(Subset::all(n), |x| {
                let img = f.apply(&rs, &Word::idempotent(x))?;
                Ok((!rs.is_idempotent(&img)?).then(|| format!("f={f}, e_{x} -> {img}")))
            })
        })?;
        ctx.record(
            "apply.preserves_idempotents",
            format!(
                "{label}, {} endomorphisms x {} idempotents",
                ends.len(),
                1 << n
            ),
            cx,
        );
    }
    Ok(())
}

fn counting_suite(ctx: &mut Ctx) -> Result<()> {
    let bits = ctx.cfg.guard_bits;
    let grid = counting::formula_grid(bits);

    let mut cx = None;
    let mut non_integral = None;
    for &(m, n) in &grid {
        match counting::closed_count(m, n) {
            Ok(closed) => {
                let brute = counting::brute_count(m, n, bits)?;
                if closed.value != brute.value {
                    cx.get_or_insert_with(|| {
                        format!(
                            "c({m},{n}): formula {} vs brute {}",
                            closed.value, brute.value
                        )
                    });
                }
            }
            Err(e) => {
                non_integral.get_or_insert_with(|| e.to_string());
            }
        }
    }
    let scope = format!("2<=m<=5, mn<={bits}, {} cells", grid.len());
    ctx.record("formula.matches_brute_force", scope.clone(), cx);
    ctx.record("formula.integral", scope, non_integral);

    let mut cx = None;
    let mut pairs = 0;
    for m in 1..=bits {
        for n in m + 1..=bits / m {
            pairs += 1;
            let a = counting::brute_count(m, n, bits)?;
            let b = counting::brute_count(n, m, bits)?;
            if a.value != b.value {
                cx.get_or_insert_with(|| {
                    format!("c({m},{n}) = {} but c({n},{m}) = {}", a.value, b.value)
                });
            }
        }
    }
    ctx.record(
        "brute.transpose_symmetric",
        format!("{pairs} shape pairs, mn<={bits}"),
        cx,
    );

    let mut cx = None;
    for m in 2..=bits / 2 {
        for n in 2..bits / m {
            let here = counting::brute_count(m, n, bits)?.value;
            let next = counting::brute_count(m, n + 1, bits)?.value;
            let all = num_bigint::BigUint::from(1u8) << (m * n);
            if here > next || here >= all {
                cx.get_or_insert_with(|| format!("c({m},{n}) = {here}, c({m},{}) = {next}", n + 1));
            }
        }
    }
    ctx.record("brute.monotone_in_size", format!("m,n>=2, mn<={bits}"), cx);
    Ok(())
}
