//! Exhaustive verification suites: the Hopf axioms, and the brute-force
//! oracle against the combinatorial formulas.

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::ffield::{CycValue, Field};
use crate::hopf::{nonnegative_integral, Basis, ScAlgebra, TensorElement};
use crate::matrixrep::{self, UtMatrix};
use crate::oracle::{self, ClassFunction, GroupTable, OrbitPartition};
use crate::partitions::{enumerate, Family, LabelledPartition, Subset};
use crate::superchar::{self, NestingCount};

const MAX_EXAMPLES: usize = 5;

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub cases: u64,
    pub failures: u64,
    /// The first few counterexamples.
    pub examples: Vec<String>,
}

impl CheckResult {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            cases: 0,
            failures: 0,
            examples: Vec::new(),
        }
    }

    pub fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.examples.len() < MAX_EXAMPLES {
                self.examples.push(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub family: Family,
    pub q: u32,
    pub n_max: usize,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }
}

fn symbols(family: Family, field: &Field, n_max: usize) -> Vec<LabelledPartition> {
    (0..=n_max).flat_map(|n| enumerate(family, n, field)).collect()
}

/// The Hopf axioms on every basis symbol (and pair, and triple) of total
/// grade at most `n_max`, in both bases.
pub fn verify_bialgebra(family: Family, field: &Field, n_max: usize) -> Result<Vec<CheckResult>> {
    let h = ScAlgebra::new(family, field)?;
    let syms = symbols(family, field, n_max);
    let pairs: Vec<(&LabelledPartition, &LabelledPartition)> = syms
        .iter()
        .flat_map(|a| syms.iter().map(move |b| (a, b)))
        .filter(|(a, b)| a.n() + b.n() <= n_max)
        .collect();
    let mut out = Vec::new();

    for basis in [Basis::P, Basis::Kappa] {
        let sym = |l: &LabelledPartition| h.symbol(basis, l.clone());

        let mut assoc = CheckResult::new(format!("associativity ({basis})"));
        for &(a, b) in &pairs {
            for c in syms.iter().filter(|c| a.n() + b.n() + c.n() <= n_max) {
                let left = h.product(&h.product(&sym(a), &sym(b))?, &sym(c))?;
                let right = h.product(&sym(a), &h.product(&sym(b), &sym(c))?)?;
                assoc.record(left == right, || format!("({a})({b})({c}): {left} vs {right}"));
            }
        }
        out.push(assoc);

        let mut unit = CheckResult::new(format!("unit laws ({basis})"));
        let one = h.one(basis);
        for a in &syms {
            let x = sym(a);
            let ok = h.product(&one, &x)? == x && h.product(&x, &one)? == x;
            unit.record(ok, || format!("1·{a} or {a}·1"));
        }
        out.push(unit);

        let mut coassoc = CheckResult::new(format!("coassociativity ({basis})"));
        let mut counit = CheckResult::new(format!("counit laws ({basis})"));
        let mut antipode = CheckResult::new(format!("antipode identities ({basis})"));
        let mut grading = CheckResult::new(format!("grading ({basis})"));
        let mut positivity = CheckResult::new(format!("nonnegative integer structure constants ({basis})"));
        for a in &syms {
            let x = sym(a);
            let d = h.coproduct(&x)?;
            let left = h.coproduct_at(&d, 0)?;
            let right = h.coproduct_at(&d, 1)?;
            coassoc.record(left == right, || format!("{a}"));
            let as_tensor = TensorElement::from(&x);
            let ok = h.counit_at(&d, 0) == as_tensor && h.counit_at(&d, 1) == as_tensor;
            counit.record(ok, || format!("{a}"));
            let expected = one.scaled(&h.counit(&x));
            let s_left = h.antipode_convolution(&x, true)?;
            let s_right = h.antipode_convolution(&x, false)?;
            antipode.record(s_left == expected && s_right == expected, || {
                format!("{a}: m(S⊗id)Δ = {s_left}, m(id⊗S)Δ = {s_right}")
            });
            grading.record(
                d.terms().keys().all(|k| k[0].n() + k[1].n() == a.n()),
                || format!("Δ({a})"),
            );
            positivity.record(nonnegative_integral(d.terms().values()), || format!("Δ({a})"));
        }
        for &(a, b) in &pairs {
            let p = h.product(&sym(a), &sym(b))?;
            grading.record(p.terms().keys().all(|l| l.n() == a.n() + b.n()), || {
                format!("({a})·({b})")
            });
            positivity.record(nonnegative_integral(p.terms().values()), || format!("({a})·({b})"));
        }

        let mut compat = CheckResult::new(format!("Δ(xy) = Δ(x)Δ(y) ({basis})"));
        for &(a, b) in &pairs {
            let lhs = h.coproduct(&h.product(&sym(a), &sym(b))?)?;
            let rhs = h.tensor_product(&h.coproduct(&sym(a))?, &h.coproduct(&sym(b))?)?;
            compat.record(lhs == rhs, || format!("({a}, {b}): {lhs} vs {rhs}"));
        }
        out.extend([coassoc, counit, compat, antipode, grading, positivity]);
    }

    let mut round_trip = CheckResult::new("basis change round trips");
    let mut product_route = CheckResult::new("κ product: direct = via P");
    let mut coproduct_route = CheckResult::new("κ coproduct: direct = via P");
    let mut transport = CheckResult::new("Δ(xy) = Δ(x)Δ(y) (κ by transport through P)");
    for a in &syms {
        let k = h.symbol(Basis::Kappa, a.clone());
        let p = h.symbol(Basis::P, a.clone());
        let ok = h.to_kappa(&h.to_p(&k)?)? == k && h.to_p(&h.to_kappa(&p)?)? == p;
        round_trip.record(ok, || format!("{a}"));
        let direct = h.coproduct(&k)?;
        let via = h.convert_tensor(&h.coproduct(&h.to_p(&k)?)?, Basis::Kappa)?;
        coproduct_route.record(direct == via, || format!("{a}: {direct} vs {via}"));
    }
    for &(a, b) in &pairs {
        let ka = h.symbol(Basis::Kappa, a.clone());
        let kb = h.symbol(Basis::Kappa, b.clone());
        let direct = h.product(&ka, &kb)?;
        let via = h.to_kappa(&h.product(&h.to_p(&ka)?, &h.to_p(&kb)?)?)?;
        product_route.record(direct == via, || format!("({a})·({b}): {direct} vs {via}"));
        let pa = h.to_p(&ka)?;
        let pb = h.to_p(&kb)?;
        let lhs = h.convert_tensor(&h.coproduct(&h.product(&pa, &pb)?)?, Basis::Kappa)?;
        let rhs = h.tensor_product(&h.coproduct(&ka)?, &h.coproduct(&kb)?)?;
        transport.record(lhs == rhs, || format!("({a}, {b})"));
    }
    out.extend([round_trip, product_route, coproduct_route, transport]);
    Ok(out)
}

/// Brute-force checks of the indexing theorem, the supercharacter axioms'
/// consequences, restriction and the coproduct, for `n ≤ n_max` (type D).
pub fn oracle_suite(
    field: &Field,
    n_max: usize,
    nesting: NestingCount,
    budget: u64,
) -> Result<Vec<CheckResult>> {
    let mut tables = Vec::new();
    for n in 0..=n_max {
        tables.push(GroupTable::build(Family::D, n, field, budget)?);
    }
    let p = field.p();
    let mut indexing = CheckResult::new("superclass labels = partitions");
    let mut orthogonality = CheckResult::new("supercharacter orthogonality");
    let mut norms = CheckResult::new("χ(1)²/⟨χ,χ⟩ positive integer");
    let mut regularity = CheckResult::new("Σ χ(1)²/⟨χ,χ⟩ = |G|");
    let mut degrees = CheckResult::new("χ(1) = degree and row ∅ = 1");
    let mut multiplicative = CheckResult::new("χ^λ = Π χ^{λ_ij}");
    let mut constancy = CheckResult::new("restrictions are superclass functions");
    let mut res_delta = CheckResult::new("Δ(κ_λ) = restriction");
    let h = ScAlgebra::new(Family::D, field)?;

    for (n, table) in tables.iter().enumerate() {
        let check = table.check_indexing();
        indexing.record(check.is_ok(), || format!("n={n}: {}", check.unwrap_err()));
        let labels: Vec<LabelledPartition> = table.labels().cloned().collect();
        let empty = LabelledPartition::empty(Family::D, n);
        let chars = labels
            .iter()
            .map(|l| superchar::supercharacter(l, &labels, field, nesting))
            .collect::<Result<Vec<_>>>()?;
        let mut total = BigRational::zero();
        for (i, l) in labels.iter().enumerate() {
            for (j, m) in labels.iter().enumerate().skip(i + 1) {
                let ip = oracle::inner_product(&chars[i], &chars[j], table)?;
                orthogonality.record(ip.is_zero(), || format!("⟨χ^{l}, χ^{m}⟩ = {ip}"));
            }
            let norm = oracle::inner_product(&chars[i], &chars[i], table)?;
            let deg = chars[i].get(&empty).cloned().unwrap_or_else(|| CycValue::zero(p));
            degrees.record(deg == superchar::degree(l, field), || format!("χ^{l}(1) = {deg}"));
            let ratio = match (norm.as_rational(), (&deg * &deg).as_rational()) {
                (Some(nr), Some(d2)) if nr.is_positive() => Some(d2 / nr),
                _ => None,
            };
            let ok = ratio.as_ref().is_some_and(|r| r.is_integer() && r.is_positive());
            norms.record(ok, || format!("χ^{l}: ⟨χ,χ⟩ = {norm}"));
            if let Some(r) = ratio {
                total += r;
            }
            let pieces = superchar::arc_pairs(l, field);
            for m in &labels {
                let whole = chars[i].get(m).cloned().unwrap_or_else(|| CycValue::zero(p));
                let mut prod = CycValue::one(p);
                for piece in &pieces {
                    prod = &prod * &superchar::chi_value(piece, m, field, nesting)?;
                }
                multiplicative.record(prod == whole, || format!("χ^{l}(x_{m})"));
            }
        }
        for m in &labels {
            let v = chars[0].get(m).cloned();
            degrees.record(v == Some(CycValue::one(p)), || format!("χ^∅(x_{m})"));
        }
        regularity.record(total == BigRational::from_integer(table.order().into()), || {
            format!("n={n}: sum {total} against |G| = {}", table.order())
        });

        for a in Subset::all(n) {
            let small = &tables[a.len()];
            let large = &tables[n - a.len()];
            for (l, chi) in labels.iter().zip(&chars) {
                let bad = oracle::restriction_violations(chi, a, small, large)?;
                constancy.record(bad.is_empty(), || {
                    format!("χ^{l} on {:?}: {} pairs", a.elements(), bad.len())
                });
                let kappa = ClassFunction::indicator(l, field, labels.iter().cloned());
                let res = oracle::restrict_eval(&kappa, a, field)?;
                let mut from_res = TensorElement::zero(Basis::Kappa, Family::D, field.q(), 2);
                let mut rational = true;
                for ((mu, nu), v) in res {
                    match v.as_rational() {
                        Some(r) => from_res.add_term(vec![mu, nu], r.clone()),
                        None => rational = false,
                    }
                }
                let component = h.coproduct_component(Basis::Kappa, l, a)?;
                res_delta.record(rational && component == from_res, || {
                    format!("κ_{l}, A = {:?}: Δ gives {component}, restriction gives {from_res}", a.elements())
                });
            }
        }
    }
    Ok(vec![
        indexing,
        orthogonality,
        norms,
        regularity,
        degrees,
        multiplicative,
        constancy,
        res_delta,
    ])
}

/// Degree identities over all pairs of total grade at most `n_max`.
pub fn degree_suite(field: &Field, n_max: usize) -> Result<Vec<CheckResult>> {
    let syms = symbols(Family::D, field, n_max);
    let mut product = CheckResult::new("χ^λ(1)χ^μ(1) = q^{2mα} χ^{λ⊔μ↑n}(1)");
    // The crossing arcs of λ widen by 2m in λ⊔μ↑n, so the factor belongs on
    // the other side whenever mα > 0.
    let mut widened = CheckResult::new("q^{2mα} χ^λ(1)χ^μ(1) = χ^{λ⊔μ↑n}(1)");
    let mut linear = CheckResult::new("χ^λ(1) = 1 iff every arc joins neighbours");
    for a in &syms {
        for b in syms.iter().filter(|b| a.n() + b.n() <= n_max) {
            let c = superchar::degree_product_check(a, b, field)?;
            product.record(c.lhs == c.rhs, || format!("({a}, {b}): {} vs {}", c.lhs, c.rhs));
            let factor = CycValue::power_of(field.p(), field.q(), (2 * b.n() * c.alpha) as i64);
            let joined = superchar::degree(&a.concat(b)?, field);
            widened.record(&factor * &c.lhs == joined, || format!("({a}, {b})"));
        }
        let is_one = superchar::degree(a, field) == CycValue::one(field.p());
        let adjacent = a
            .signed_plus()
            .iter()
            .all(|arc| arc.j > 0 && arc.j == arc.i + 1);
        linear.record(is_one == adjacent, || format!("{a}"));
    }
    Ok(vec![product, widened, linear])
}

/// The canonical form against exhaustive orbits of `u_size(q)`: exactly one
/// arc-form matrix per orbit, and every reduced matrix in its input's orbit.
/// With `samples = None` every matrix is reduced; otherwise that many seeded
/// random matrices, each also moved by `translates` random unitriangular
/// pairs.
pub fn canonical_form_suite(
    size: usize,
    field: &Field,
    samples: Option<usize>,
    translates: usize,
    seed: u64,
    budget: u64,
) -> Result<Vec<CheckResult>> {
    let mut orbits = OrbitPartition::build(size, field, budget)?;
    let mut census = CheckResult::new(format!("one arc-form matrix per orbit of u_{size}({})", field.q()));
    let (count, bad) = orbits.arc_form_census();
    for (root, k) in &bad {
        census.record(false, || format!("orbit of {root} holds {k} arc-form matrices"));
    }
    census.cases = count as u64;

    let mut agree = CheckResult::new(format!("verge = orbit representative on u_{size}({})", field.q()));
    let mut idem = CheckResult::new(format!("verge idempotent on u_{size}({})", field.q()));
    let mut invariant = CheckResult::new(format!("verge invariant under U·M·U on u_{size}({})", field.q()));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let matrices: Vec<UtMatrix> = match samples {
        None => (0..orbits.states() as u32).map(|s| orbits.decode_matrix(s)).collect(),
        Some(k) => (0..k)
            .map(|_| {
                let s = rng.gen_range(0..orbits.states() as u32);
                orbits.decode_matrix(s)
            })
            .collect(),
    };
    let nonzero: Vec<_> = field.nonzero().collect();
    let random_unitriangular = |rng: &mut ChaCha8Rng| {
        let mut g = UtMatrix::identity(size);
        for _ in 0..rng.gen_range(1..=10) {
            let i = rng.gen_range(0..size - 1);
            let j = rng.gen_range(i + 1..size);
            let t = nonzero[rng.gen_range(0..nonzero.len())];
            g = g.mul(&UtMatrix::elementary(size, i, j, t), field);
        }
        g
    };
    for m in &matrices {
        let canon = matrixrep::verge_reduce(m, field)?;
        let ok = canon.is_arc_form() && orbits.orbit_of(&canon) == orbits.orbit_of(m);
        agree.record(ok, || format!("\n{m}reduced to\n{canon}"));
        idem.record(matrixrep::verge_reduce(&canon, field)? == canon, || format!("\n{canon}"));
        for _ in 0..translates {
            let g = random_unitriangular(&mut rng);
            let h = random_unitriangular(&mut rng);
            let moved = g.mul(m, field).mul(&h, field);
            let again = matrixrep::verge_reduce(&moved, field)?;
            invariant.record(again == canon, || format!("\n{m}moved to\n{moved}"));
        }
    }
    Ok(vec![census, agree, idem, invariant])
}

/// Everything `scd verify` runs: Hopf axioms for the family, and for type D
/// the oracle, degree and `u_4` canonical-form suites within budget. `seed`
/// drives the random translates in the canonical-form suite.
pub fn full_report(family: Family, field: &Field, n_max: usize, budget: u64, seed: u64) -> Result<Report> {
    let mut checks = verify_bialgebra(family, field, n_max)?;
    if family == Family::D {
        let mut oracle_n = 0;
        while oracle_n < n_max && oracle::group_order(oracle_n + 1, field.q()) <= budget as u128 {
            oracle_n += 1;
        }
        checks.extend(oracle_suite(field, oracle_n, NestingCount::default(), budget)?);
        checks.extend(degree_suite(field, n_max)?);
        if (field.q() as u128).pow(6) <= budget as u128 {
            checks.extend(canonical_form_suite(4, field, None, 1, seed, budget)?);
        }
    }
    Ok(Report {
        family,
        q: field.q(),
        n_max,
        checks,
    })
}
