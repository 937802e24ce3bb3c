//! The Čech hypercube of localizations, its pruning, and local cohomology.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::cycles::{localize_cycle, zero_section, CharCycle, ConormalComponent, Strategy};
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::hilbert;
use crate::poly::{same_ring, Polynomial, Ring};

/// A vertex of the cube: bit `i` set means `f_{i+1}` divides `f_α`.
pub type Vertex = u32;

/// Largest supported number of generators.
pub const MAX_FACTORS: usize = 20;

/// Where the cycle of `M` came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// `M = R` or a local cohomology module produced by this pipeline.
    Trusted,
    /// A cycle supplied by the caller; the result is conditional on
    /// every localization map of the cube being injective or zero.
    Supplied,
}

/// `α ↦ CC(M_{f_α})` for all `2^s` vertices.
#[derive(Clone, Debug)]
pub struct Hypercube {
    factors: Vec<Polynomial>,
    vertices: Vec<CharCycle>,
}

impl Hypercube {
    pub fn factors(&self) -> &[Polynomial] {
        &self.factors
    }

    pub fn size(&self) -> usize {
        self.factors.len()
    }

    pub fn vertex(&self, alpha: Vertex) -> &CharCycle {
        &self.vertices[alpha as usize]
    }

    pub fn vertices(&self) -> impl Iterator<Item = (Vertex, &CharCycle)> {
        self.vertices.iter().enumerate().map(|(a, c)| (a as Vertex, c))
    }
}

/// Subcycles left at each vertex after pruning.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrunedCube {
    size: usize,
    vertices: Vec<CharCycle>,
}

impl PrunedCube {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn vertex(&self, alpha: Vertex) -> &CharCycle {
        &self.vertices[alpha as usize]
    }

    pub fn vertices(&self) -> impl Iterator<Item = (Vertex, &CharCycle)> {
        self.vertices.iter().enumerate().map(|(a, c)| (a as Vertex, c))
    }
}

/// Indices of the generators in a vertex, starting at 0.
pub fn vertex_members(alpha: Vertex) -> Vec<usize> {
    (0..32).filter(|i| alpha >> i & 1 == 1).collect()
}

/// `{0,1,2}` style label.
pub fn vertex_label(alpha: Vertex) -> String {
    let parts: Vec<String> = vertex_members(alpha).iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

fn check_factors(cc: &CharCycle, factors: &[Polynomial]) -> Result<()> {
    if factors.is_empty() {
        return Err(Error::ShapeMismatch("the Čech complex needs at least one generator".into()));
    }
    if factors.len() > MAX_FACTORS {
        return Err(Error::ShapeMismatch(format!("at most {MAX_FACTORS} generators are supported")));
    }
    let base = cc.ring().base()?;
    for f in factors {
        if !same_ring(&base, f.ring()) {
            return Err(Error::RingMismatch);
        }
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
    }
    Ok(())
}

/// The parent used to reach `alpha`: drop its highest generator.
fn parent(alpha: Vertex) -> (Vertex, usize) {
    let top = 31 - alpha.leading_zeros() as usize;
    (alpha & !(1 << top), top)
}

/// Generators of the cube, each given as a list of factors.
#[derive(Clone, Debug)]
pub struct CubeSpec {
    pub factors: Vec<Vec<Polynomial>>,
    pub strategy: Strategy,
}

impl CubeSpec {
    /// One factor per generator.
    pub fn simple(gens: &[Polynomial]) -> CubeSpec {
        CubeSpec {
            factors: gens.iter().map(|g| vec![g.clone()]).collect(),
            strategy: Strategy::Iterative,
        }
    }

    fn products(&self) -> Result<Vec<Polynomial>> {
        self.factors
            .iter()
            .map(|fs| {
                let first = fs
                    .first()
                    .ok_or_else(|| Error::ShapeMismatch("a generator needs at least one factor".into()))?;
                fs[1..].iter().try_fold(first.clone(), |acc, g| acc.mul(g))
            })
            .collect()
    }
}

/// Localizes `cc` along the path `∅ → alpha` that adds generators in order.
fn compute_vertex(
    cc: &CharCycle,
    spec: &CubeSpec,
    alpha: Vertex,
    memo: &mut BTreeMap<Vertex, CharCycle>,
) -> Result<CharCycle> {
    if let Some(c) = memo.get(&alpha) {
        return Ok(c.clone());
    }
    let out = if alpha == 0 {
        cc.clone()
    } else {
        let (p, i) = parent(alpha);
        let up = compute_vertex(cc, spec, p, memo)?;
        if up.is_zero() {
            up
        } else {
            localize_cycle(&up, &spec.factors[i], spec.strategy)?
        }
    };
    log::info!("vertex {}: {} components", vertex_label(alpha), out.len());
    memo.insert(alpha, out.clone());
    Ok(out)
}

/// All vertices of the cube, each obtained from its parent by one localization.
pub fn build_hypercube(cc: &CharCycle, factors: &[Polynomial]) -> Result<Hypercube> {
    build_hypercube_with(cc, &CubeSpec::simple(factors))
}

/// As [`build_hypercube`], with factored generators.
pub fn build_hypercube_with(cc: &CharCycle, spec: &CubeSpec) -> Result<Hypercube> {
    let factors = spec.products()?;
    check_factors(cc, &factors)?;
    let mut memo = BTreeMap::new();
    let mut vertices = Vec::with_capacity(1 << factors.len());
    for alpha in 0..(1u32 << factors.len()) {
        vertices.push(compute_vertex(cc, spec, alpha, &mut memo)?);
    }
    Ok(Hypercube { factors, vertices })
}

/// Only the requested vertices (and the chains leading to them).
pub fn cube_vertices(cc: &CharCycle, factors: &[Polynomial], wanted: &[Vertex]) -> Result<BTreeMap<Vertex, CharCycle>> {
    check_factors(cc, factors)?;
    let spec = CubeSpec::simple(factors);
    let mut memo = BTreeMap::new();
    let mut out = BTreeMap::new();
    for &alpha in wanted {
        if alpha >> factors.len() != 0 {
            return Err(Error::ShapeMismatch(format!(
                "vertex {} outside a cube on {} generators",
                vertex_label(alpha),
                factors.len()
            )));
        }
        out.insert(alpha, compute_vertex(cc, &spec, alpha, &mut memo)?);
    }
    Ok(out)
}

/// Multiset intersection of two cycles.
pub fn common_part(a: &CharCycle, b: &CharCycle) -> Result<CharCycle> {
    let mut out = CharCycle::zero(a.ring())?;
    for (c, m) in a.components() {
        let k = m.min(b.multiplicity(c.key()));
        if k > 0 {
            out.add(c.clone(), k)?;
        }
    }
    Ok(out)
}

fn subtract(a: &mut CharCycle, b: &CharCycle) -> Result<()> {
    for (c, m) in b.components() {
        a.remove(c.key(), m)?;
    }
    Ok(())
}

/// For `j = 1..s` in order, removes from both ends of every edge in
/// direction `j` the components they still share. What the two sides of a
/// step still share after that, summed over the vertices with the same
/// higher bits and the same number of lower bits, is removed as well.
pub fn prune(cube: &Hypercube) -> Result<PrunedCube> {
    let s = cube.size();
    let mut cur = cube.vertices.clone();
    for j in 0..s {
        for alpha in 0..(1u32 << s) {
            if alpha >> j & 1 == 1 {
                continue;
            }
            let beta = alpha | 1 << j;
            let common = common_part(&cur[alpha as usize], &cur[beta as usize])?;
            if common.is_zero() {
                continue;
            }
            subtract(&mut cur[alpha as usize], &common)?;
            subtract(&mut cur[beta as usize], &common)?;
        }
        let low = (1u32 << j) - 1;
        let mut groups: BTreeMap<(u32, u32), Vec<Vertex>> = BTreeMap::new();
        for alpha in 0..(1u32 << s) {
            if alpha >> j & 1 == 0 {
                groups.entry((alpha >> (j + 1), (alpha & low).count_ones())).or_default().push(alpha);
            }
        }
        for side in groups.values() {
            if side.len() < 2 {
                continue;
            }
            let ring = cur[0].ring().clone();
            let (mut below, mut above) = (CharCycle::zero(&ring)?, CharCycle::zero(&ring)?);
            for &alpha in side {
                below.merge(&cur[alpha as usize])?;
                above.merge(&cur[(alpha | 1 << j) as usize])?;
            }
            let common = common_part(&below, &above)?;
            if common.is_zero() {
                continue;
            }
            for shift in [0, 1u32 << j] {
                let mut left = common.clone();
                for &alpha in side {
                    let v = &mut cur[(alpha | shift) as usize];
                    let take = common_part(v, &left)?;
                    subtract(v, &take)?;
                    subtract(&mut left, &take)?;
                }
            }
        }
    }
    Ok(PrunedCube { size: s, vertices: cur })
}

/// `r ↦ Σ_{|α| = r}` of the pruned vertex cycles, for `r = 0..=s`.
pub fn local_cohomology_cycles(pruned: &PrunedCube) -> Result<Vec<CharCycle>> {
    let ring = pruned.vertices[0].ring().clone();
    let mut out = Vec::with_capacity(pruned.size + 1);
    for _ in 0..=pruned.size {
        out.push(CharCycle::zero(&ring)?);
    }
    for (alpha, c) in pruned.vertices() {
        out[alpha.count_ones() as usize].merge(c)?;
    }
    Ok(out)
}

/// Checks that the blocks add up to `cc` exactly and returns them.
pub fn decompose_direct_sum(cc: &CharCycle, blocks: &[CharCycle]) -> Result<Vec<CharCycle>> {
    if blocks.is_empty() {
        return Err(Error::InvalidSplit("empty split".into()));
    }
    let mut total = CharCycle::zero(cc.ring())?;
    for b in blocks {
        if !same_ring(b.ring(), cc.ring()) {
            return Err(Error::RingMismatch);
        }
        if b.is_zero() {
            return Err(Error::InvalidSplit("empty block".into()));
        }
        total.merge(b)?;
    }
    if &total != cc {
        return Err(Error::InvalidSplit(format!("blocks add up to {total}, not to {cc}")));
    }
    Ok(blocks.to_vec())
}

/// Everything the Čech pipeline produces for one module.
#[derive(Clone, Debug)]
pub struct CechResult {
    pub cube: Hypercube,
    pub pruned: PrunedCube,
    pub cohomology: Vec<CharCycle>,
    pub warnings: Vec<String>,
}

const DAGGER_WARNING: &str = "result is conditional: the cycle was supplied by the caller, and pruning is \
     only valid when every localization map along the cube is injective or has zero target \
     (it fails for instance on R ⊕ H^1_(x)(R) treated as one module)";

/// `CC(H^r_I(M))` for `I = (f_1..f_s)`.
pub fn local_cohomology(cc: &CharCycle, factors: &[Polynomial], provenance: Provenance) -> Result<CechResult> {
    local_cohomology_with(cc, &CubeSpec::simple(factors), provenance)
}

/// As [`local_cohomology`], with factored generators.
pub fn local_cohomology_with(cc: &CharCycle, spec: &CubeSpec, provenance: Provenance) -> Result<CechResult> {
    run_cube(cc, spec, provenance, "consider declaring a direct-sum split")
}

fn run_cube(cc: &CharCycle, spec: &CubeSpec, provenance: Provenance, note: &str) -> Result<CechResult> {
    let mut warnings = Vec::new();
    if provenance == Provenance::Supplied {
        let w = format!("{DAGGER_WARNING}; {note}");
        log::warn!("{w}");
        warnings.push(w);
    }
    let cube = build_hypercube_with(cc, spec)?;
    let pruned = prune(&cube)?;
    let cohomology = local_cohomology_cycles(&pruned)?;
    Ok(CechResult {
        cube,
        pruned,
        cohomology,
        warnings,
    })
}

/// Runs the pipeline on each block of a declared split and adds the results.
pub fn local_cohomology_split(cc: &CharCycle, blocks: &[CharCycle], spec: &CubeSpec) -> Result<(Vec<CharCycle>, Vec<CechResult>)> {
    let blocks = decompose_direct_sum(cc, blocks)?;
    let mut total: Vec<CharCycle> = Vec::new();
    let mut runs = Vec::new();
    for b in &blocks {
        let prov = if *b == zero_section(b.ring())? {
            Provenance::Trusted
        } else {
            Provenance::Supplied
        };
        let run = run_cube(b, spec, prov, "each summand of the declared split must satisfy it")?;
        if total.is_empty() {
            total = run.cohomology.clone();
        } else {
            for (t, c) in total.iter_mut().zip(&run.cohomology) {
                t.merge(c)?;
            }
        }
        runs.push(run);
    }
    Ok((total, runs))
}

/// `Σ_α (-1)^|α| CC(M_{f_α})` and `Σ_r (-1)^r CC(H^r)` as signed sums keyed by component.
pub fn euler_characteristics(cube: &Hypercube, cohomology: &[CharCycle]) -> (BTreeMap<String, i64>, BTreeMap<String, i64>) {
    let mut left: BTreeMap<String, i64> = BTreeMap::new();
    for (alpha, c) in cube.vertices() {
        let sign = if alpha.count_ones() % 2 == 0 { 1 } else { -1 };
        for (comp, m) in c.components() {
            *left.entry(comp.key().to_string()).or_default() += sign * m as i64;
        }
    }
    let mut right: BTreeMap<String, i64> = BTreeMap::new();
    for (r, c) in cohomology.iter().enumerate() {
        let sign = if r % 2 == 0 { 1 } else { -1 };
        for (comp, m) in c.components() {
            *right.entry(comp.key().to_string()).or_default() += sign * m as i64;
        }
    }
    left.retain(|_, v| *v != 0);
    right.retain(|_, v| *v != 0);
    (left, right)
}

/// Upper-triangular `(d+1) × (d+1)` table of `λ_{p,i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LyubeznikTable {
    entries: Vec<Vec<u64>>,
}

impl LyubeznikTable {
    /// `d = dim R/I`.
    pub fn dimension(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn get(&self, p: usize, i: usize) -> u64 {
        self.entries.get(p).and_then(|r| r.get(i)).copied().unwrap_or(0)
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.entries
    }
}

impl fmt::Display for LyubeznikTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// The conormal of the origin, `T*_{0} X`.
pub fn origin_component(ring: &Arc<Ring>) -> Result<ConormalComponent> {
    let base = ring.base()?;
    let all: Vec<usize> = (0..base.nvars()).collect();
    ConormalComponent::conormal_of(ring, &Ideal::variables(&base, &all))
}

/// `CC(H^r_I(R))` for every `r`, starting from `CC(R)`.
pub fn ring_cohomology(ring: &Arc<Ring>, gens: &[Polynomial]) -> Result<CechResult> {
    local_cohomology(&zero_section(ring)?, gens, Provenance::Trusted)
}

/// `λ_{p,i}`: multiplicity of `T*_{0} X` in `CC(H^p_m(H^{n-i}_I(R)))`.
pub fn lyubeznik_table(ring: &Arc<Ring>, gens: &[Polynomial]) -> Result<LyubeznikTable> {
    let base = ring.base()?;
    let n = base.nvars();
    let ideal = Ideal::new(&base, gens.to_vec())?;
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let all: Vec<usize> = (0..n).collect();
    if !Ideal::variables(&base, &all).contains_ideal(&ideal)? {
        return Err(Error::ShapeMismatch("the ideal must lie in the maximal ideal of the origin".into()));
    }
    let d = hilbert::dimension(&ideal)?;
    let outer = ring_cohomology(ring, gens)?;
    let origin = origin_component(ring)?;
    let xs: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(&base, i)).collect();
    let mut entries = vec![vec![0u64; d + 1]; d + 1];
    for (r, m) in outer.cohomology.iter().enumerate() {
        if m.is_zero() {
            continue;
        }
        let i = n.checked_sub(r).filter(|&i| i <= d).ok_or_else(|| {
            Error::ShapeMismatch(format!("H^{r} is nonzero outside the expected range"))
        })?;
        let inner = local_cohomology(m, &xs, Provenance::Trusted)?;
        for (p, h) in inner.cohomology.iter().enumerate() {
            let k = h.multiplicity(origin.key());
            if k == 0 {
                continue;
            }
            if p > i {
                return Err(Error::ShapeMismatch(format!("λ_{{{p},{i}}} = {k} below the diagonal")));
            }
            entries[p][i] = k;
        }
    }
    Ok(LyubeznikTable { entries })
}
