//! The eight ribbon operators on partitions in the rectangle and the Pieri
//! engine built from them.
//!
//! An adding operator anchored in row `i` sends `λ` to
//! `t_c λ + sum_η (h - (p-q) t_*) p^{ht-1} q^{wd-1} μ`, the sum over
//! ribbons `η = μ/λ` in the rectangle whose head (or tail) lies in row `i`;
//! `c = λ_i + k + 1 - i` and `t_*` is the head or tail label of `η`
//! depending on the operator's value side. Deleting operators do the same
//! from `μ` downward with `c = μ_i + k + 1 - i`. The Pieri expansion of
//! `c_r(V^dual)` is the sum of all chains over `1 <= i_1 < ... < i_r <= k`,
//! the operator with the smallest row applied next to the class.

use std::collections::BTreeMap;



use crate::error::Error;
use crate::exactalg::{parse_poly, MultiPoly, ParamSpec, Rational, VarUniverse};
use crate::shapes::{
    grassmannian_perm, partitions_in_rectangle, ribbons_added, ribbons_deleted, skew_boxes,
    Anchor, GrassSetting, Partition,
};

/// Linear combination of partitions with polynomial coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrassClassVector {
    pub uni: VarUniverse,
    pub terms: BTreeMap<Partition, MultiPoly>,
}

impl GrassClassVector {
    pub fn zero(uni: VarUniverse) -> Self {
        GrassClassVector {
            uni,
            terms: BTreeMap::new(),
        }
    }

    pub fn single(uni: VarUniverse, lambda: Partition) -> Self {
        let mut v = Self::zero(uni);
        v.terms.insert(lambda, MultiPoly::one(uni));
        v
    }

    pub fn add_term(&mut self, p: Partition, c: MultiPoly) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(p) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                e.get_mut().add_assign(&c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &GrassClassVector) {
        for (p, c) in &other.terms {
            self.add_term(p.clone(), c.clone());
        }
    }

    pub fn sub(&self, other: &GrassClassVector) -> GrassClassVector {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, f: &MultiPoly) -> GrassClassVector {
        let mut out = Self::zero(self.uni);
        for (p, c) in &self.terms {
            out.add_term(p.clone(), c.mul(f));
        }
        out
    }

    pub fn specialize(&self, s: &ParamSpec) -> GrassClassVector {
        let mut out = Self::zero(self.uni);
        for (p, c) in &self.terms {
            out.add_term(p.clone(), c.specialize(s));
        }
        out
    }

    pub fn coefficient(&self, p: &Partition) -> MultiPoly {
        self.terms
            .get(p)
            .cloned()
            .unwrap_or_else(|| MultiPoly::zero(self.uni))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The longest-element twist: `t_i -> t_{n+1-i}` on coefficients and
    /// `ν -> dual(ν)` on classes.
    pub fn weyl_twist(&self, setting: GrassSetting) -> GrassClassVector {
        let n = setting.n as u16;
        let t1 = self.uni.t(1);
        let tn = self.uni.t(setting.n);
        let mut out = Self::zero(self.uni);
        for (p, c) in &self.terms {
            let twisted = c.map_vars(|v| {
                if v >= t1 && v <= tn {
                    t1 + (n - 1) - (v - t1)
                } else {
                    v
                }
            });
            out.add_term(p.dual(setting), twisted);
        }
        out
    }

    pub fn to_json(
        &self,
        class_field: Option<(&str, GrassSetting, &Partition, usize)>,
    ) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .sorted_by_grade()
            .iter()
            .map(|(mu, c)| {
                serde_json::json!({
                    "mu": mu.0,
                    "coeff": c.to_string(),
                })
            })
            .collect();
        match class_field {
            Some((class, s, lambda, r)) => serde_json::json!({
                "class": class,
                "n": s.n,
                "k": s.k,
                "lambda": lambda.0,
                "r": r,
                "terms": terms,
            }),
            None => serde_json::json!({ "terms": terms }),
        }
    }

    fn sorted_by_grade(&self) -> Vec<(&Partition, &MultiPoly)> {
        let mut v: Vec<(&Partition, &MultiPoly)> = self.terms.iter().collect();
        v.sort_by_key(|(p, _)| (p.size(), p.0.clone()));
        v
    }

    /// Text rendering: one `coeff * class[...]` line per term, ordered by
    /// (size, parts).
    pub fn render_text(&self, class_label: &str) -> String {
        self.sorted_by_grade()
            .iter()
            .map(|(p, c)| format!("({c}) * {class_label}{p}"))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Which ribbon label the coefficient carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValueSide {
    Head,
    Tail,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Adding,
    Deleting,
}

/// One of the eight ribbon operators: anchor side x value side x direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RibbonOpKind {
    pub anchor: Anchor,
    pub value: ValueSide,
    pub direction: Direction,
}

impl RibbonOpKind {
    pub const fn adding(anchor: Anchor, value: ValueSide) -> Self {
        RibbonOpKind {
            anchor,
            value,
            direction: Direction::Adding,
        }
    }

    pub const fn deleting(anchor: Anchor, value: ValueSide) -> Self {
        RibbonOpKind {
            anchor,
            value,
            direction: Direction::Deleting,
        }
    }
}

/// Apply a single ribbon operator anchored in row `i` (symbolic in
/// `p, q, h, t`).
pub fn apply_op(
    setting: GrassSetting,
    kind: RibbonOpKind,
    i: usize,
    v: &GrassClassVector,
) -> GrassClassVector {
    let uni = v.uni;
    let p = MultiPoly::var(uni, VarUniverse::P);
    let q = MultiPoly::var(uni, VarUniverse::Q);
    let h = MultiPoly::var(uni, VarUniverse::H);
    let mut out = GrassClassVector::zero(uni);
    for (part, c) in &v.terms {
        let label = part.part(i) as usize + setting.k + 1 - i;
        let diag = MultiPoly::var(uni, uni.t(label));
        out.add_term(part.clone(), c.mul(&diag));
        let ribbons = match kind.direction {
            Direction::Adding => ribbons_added(setting, part, i, kind.anchor),
            Direction::Deleting => ribbons_deleted(setting, part, i, kind.anchor),
        };
        for r in ribbons {
            let t_label = match kind.value {
                ValueSide::Head => r.h_stat,
                ValueSide::Tail => r.t_stat,
            } as usize;
            let coeff = h
                .sub(&p.sub(&q).mul_var(uni.t(t_label)))
                .mul(&p.pow(r.ht - 1))
                .mul(&q.pow(r.wd - 1));
            let target = match kind.direction {
                Direction::Adding => r.outer.clone(),
                Direction::Deleting => r.inner.clone(),
            };
            out.add_term(target, c.mul(&coeff));
        }
    }
    out
}

/// Sum of all operator chains over `1 <= i_1 < ... < i_r <= k`. For adding
/// chains row `i_1` is applied first; for deleting chains row `i_r` is.
pub fn chain_sum(
    setting: GrassSetting,
    kind: RibbonOpKind,
    v: &GrassClassVector,
    r: usize,
) -> GrassClassVector {
    let mut out = GrassClassVector::zero(v.uni);
    for subset in index_subsets(setting.k, r) {
        let mut cur = v.clone();
        match kind.direction {
            Direction::Adding => {
                for &i in &subset {
                    cur = apply_op(setting, kind, i, &cur);
                }
            }
            Direction::Deleting => {
                for &i in subset.iter().rev() {
                    cur = apply_op(setting, kind, i, &cur);
                }
            }
        }
        out.add_assign(&cur);
    }
    out
}

/// Strictly increasing `r`-subsets of `{1..k}`.
pub fn index_subsets(k: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(out: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>, next: usize, k: usize, r: usize) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in next..=k {
            cur.push(i);
            rec(out, cur, i + 1, k, r);
            cur.pop();
        }
    }
    rec(&mut out, &mut cur, 1, k, r);
    out
}

/// The class families served by the Pieri engine. Each fixes a parameter
/// substitution and a value side for the adding head-anchored chains.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassKind {
    Schubert,
    IdealSheaf,
    StructureSheaf,
    Csm,
    SegreMacPherson,
    MotivicChern,
    SegreMotivic,
    DualizingSheaf,
}

impl ClassKind {
    pub const ALL: [ClassKind; 8] = [
        ClassKind::Schubert,
        ClassKind::IdealSheaf,
        ClassKind::StructureSheaf,
        ClassKind::Csm,
        ClassKind::SegreMacPherson,
        ClassKind::MotivicChern,
        ClassKind::SegreMotivic,
        ClassKind::DualizingSheaf,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClassKind::Schubert => "Schubert",
            ClassKind::IdealSheaf => "Ideal",
            ClassKind::StructureSheaf => "Structure",
            ClassKind::Csm => "CSM",
            ClassKind::SegreMacPherson => "SSM",
            ClassKind::MotivicChern => "MC",
            ClassKind::SegreMotivic => "SMC",
            ClassKind::DualizingSheaf => "Omega",
        }
    }

    /// Prefix used for class symbols in text output.
    pub fn symbol(self) -> &'static str {
        match self {
            ClassKind::Schubert => "Y",
            ClassKind::IdealSheaf => "I",
            ClassKind::StructureSheaf => "O",
            ClassKind::Csm => "csm",
            ClassKind::SegreMacPherson => "ssm",
            ClassKind::MotivicChern => "M",
            ClassKind::SegreMotivic => "S",
            ClassKind::DualizingSheaf => "w",
        }
    }

    pub fn parse(s: &str) -> Option<ClassKind> {
        match s.to_ascii_lowercase().as_str() {
            "schubert" => Some(ClassKind::Schubert),
            "ideal" | "idealsheaf" => Some(ClassKind::IdealSheaf),
            "structure" | "structuresheaf" | "o" => Some(ClassKind::StructureSheaf),
            "csm" => Some(ClassKind::Csm),
            "ssm" | "segremacpherson" => Some(ClassKind::SegreMacPherson),
            "mc" | "motivic" | "motivicchern" => Some(ClassKind::MotivicChern),
            "smc" | "segremotivic" => Some(ClassKind::SegreMotivic),
            "omega" | "dualizing" | "dualizingsheaf" => Some(ClassKind::DualizingSheaf),
            _ => None,
        }
    }

    /// The `(p, q, h)` substitution of the family (plus `t = 0` for the
    /// dualizing sheaf, whose rule is non-equivariant).
    pub fn param_spec(self, uni: VarUniverse) -> ParamSpec {
        let (p, q, h) = match self {
            ClassKind::Schubert => ("0", "0", "1"),
            ClassKind::IdealSheaf | ClassKind::StructureSheaf => ("1", "0", "1"),
            ClassKind::Csm | ClassKind::SegreMacPherson => ("1", "1", "1"),
            ClassKind::MotivicChern | ClassKind::SegreMotivic => ("1", "0-y", "1+y"),
            ClassKind::DualizingSheaf => ("0", "0-1", "1"),
        };
        let mut ps = ParamSpec::new()
            .set(VarUniverse::P, parse_poly(uni, p).unwrap())
            .set(VarUniverse::Q, parse_poly(uni, q).unwrap())
            .set(VarUniverse::H, parse_poly(uni, h).unwrap());
        if self == ClassKind::DualizingSheaf {
            ps = ps.merge(&ParamSpec::zero_t(uni));
        }
        ps
    }

    /// Head-valued for the direct families, tail-valued for their Poincaré
    /// duals.
    pub fn value_side(self) -> ValueSide {
        match self {
            ClassKind::Schubert
            | ClassKind::IdealSheaf
            | ClassKind::Csm
            | ClassKind::MotivicChern
            | ClassKind::DualizingSheaf => ValueSide::Head,
            ClassKind::StructureSheaf | ClassKind::SegreMacPherson | ClassKind::SegreMotivic => {
                ValueSide::Tail
            }
        }
    }
}

/// The Pieri expansion of `c_r(V^dual) * [class(λ)]` in the family's own
/// basis. Chains are computed symbolically; the family's parameters are
/// substituted last.
pub fn pieri(
    setting: GrassSetting,
    kind: ClassKind,
    lambda: &Partition,
    r: usize,
) -> Result<GrassClassVector, Error> {
    if r > setting.k {
        return Err(Error::Domain(format!(
            "r = {r} out of range 0..={}",
            setting.k
        )));
    }
    let sym = pieri_symbolic(setting, kind.value_side(), lambda, r);
    Ok(sym.specialize(&kind.param_spec(sym.uni)))
}

/// The symbolic `(p, q, h, t)` chain sum for the adding head-anchored
/// operator of the given value side.
pub fn pieri_symbolic(
    setting: GrassSetting,
    value: ValueSide,
    lambda: &Partition,
    r: usize,
) -> GrassClassVector {
    let uni = VarUniverse::new(setting.n);
    let start = GrassClassVector::single(uni, lambda.clone());
    chain_sum(
        setting,
        RibbonOpKind::adding(Anchor::Head, value),
        &start,
        r,
    )
}

/// The opposite-cell Pieri expansion: computed directly with deleting
/// tail-anchored tail-valued chains, and again through the longest-element
/// twist of the head-anchored expansion of the dual partition. Both are
/// returned for cross-checking.
pub fn pieri_opposite_cells(
    setting: GrassSetting,
    mu: &Partition,
    r: usize,
) -> Result<(GrassClassVector, GrassClassVector), Error> {
    if r > setting.k {
        return Err(Error::Domain(format!(
            "r = {r} out of range 0..={}",
            setting.k
        )));
    }
    let uni = VarUniverse::new(setting.n);
    let start = GrassClassVector::single(uni, mu.clone());
    let direct = chain_sum(
        setting,
        RibbonOpKind::deleting(Anchor::Tail, ValueSide::Tail),
        &start,
        r,
    );
    let twisted =
        pieri_symbolic(setting, ValueSide::Head, &mu.dual(setting), r).weyl_twist(setting);
    Ok((direct, twisted))
}

/// The refined operator `v_{ab}`: for `a < b`, the unique ribbon with tail
/// label `a` and head label `b` (zero if none fits); for `a = b`, `t_a λ`
/// when `a` is a diagonal label of `λ`.
pub fn refined_op(
    setting: GrassSetting,
    a: u32,
    b: u32,
    v: &GrassClassVector,
) -> Result<GrassClassVector, Error> {
    if a > b {
        return Err(Error::Domain(format!(
            "refined operator needs a <= b, got ({a}, {b})"
        )));
    }
    let uni = v.uni;
    let p = MultiPoly::var(uni, VarUniverse::P);
    let q = MultiPoly::var(uni, VarUniverse::Q);
    let h = MultiPoly::var(uni, VarUniverse::H);
    let mut out = GrassClassVector::zero(uni);
    for (part, c) in &v.terms {
        if a == b {
            if part.row_labels(setting).contains(&a) {
                out.add_term(part.clone(), c.mul_var(uni.t(a as usize)));
            }
            continue;
        }
        for mu in partitions_in_rectangle(setting) {
            if let Some(r) = crate::shapes::ribbon_between(setting, part, &mu) {
                if r.t_stat == a && r.h_stat == b {
                    let coeff = h
                        .sub(&p.sub(&q).mul_var(uni.t(b as usize)))
                        .mul(&p.pow(r.ht - 1))
                        .mul(&q.pow(r.wd - 1));
                    out.add_term(mu.clone(), c.mul(&coeff));
                }
            }
        }
    }
    Ok(out)
}

/// Non-equivariant dualizing-sheaf Pieri: `sum_μ (-1)^{|μ/λ| - r} μ` over
/// `μ` in the rectangle with `μ/λ` having exactly `r` nonempty rows (no
/// connectivity requirement).
pub fn omega_pieri(
    setting: GrassSetting,
    lambda: &Partition,
    r: usize,
) -> Result<GrassClassVector, Error> {
    if r > setting.k {
        return Err(Error::Domain(format!(
            "r = {r} out of range 0..={}",
            setting.k
        )));
    }
    let uni = VarUniverse::new(setting.n);
    let mut out = GrassClassVector::zero(uni);
    for mu in partitions_in_rectangle(setting) {
        if !mu.contains(lambda) {
            continue;
        }
        let rows = (1..=setting.k)
            .filter(|&i| mu.part(i) > lambda.part(i))
            .count();
        if rows != r {
            continue;
        }
        let boxes = mu.size() as usize - lambda.size() as usize;
        let sign = if (boxes - r) % 2 == 0 {
            Rational::from_integer(1.into())
        } else {
            Rational::from_integer((-1).into())
        };
        out.add_term(mu, MultiPoly::constant(uni, sign));
    }
    Ok(out)
}

/// `D_ν = prod_{j <= k} (1 - t_{w_ν(j)})`, the fixed-point restriction of
/// the determinant class.
pub fn d_factor(setting: GrassSetting, uni: VarUniverse, nu: &Partition) -> MultiPoly {
    let w = grassmannian_perm(setting, nu);
    let mut out = MultiPoly::one(uni);
    for j in 1..=setting.k {
        let t = MultiPoly::var(uni, uni.t(w.apply(j)));
        out = out.mul(&MultiPoly::one(uni).sub(&t));
    }
    out
}

/// The per-ribbon intertwining identity
/// `(1 - t_{tail}) D_μ = (1 - t_{head}) D_λ`, symbolically, for every
/// ribbon in the rectangle.
pub fn intertwining_holds(setting: GrassSetting) -> bool {
    let uni = VarUniverse::new(setting.n);
    let one = MultiPoly::one(uni);
    let parts = partitions_in_rectangle(setting);
    for lam in &parts {
        let d_lam = d_factor(setting, uni, lam);
        for mu in &parts {
            if let Some(r) = crate::shapes::ribbon_between(setting, lam, mu) {
                let d_mu = d_factor(setting, uni, mu);
                let lhs = one
                    .sub(&MultiPoly::var(uni, uni.t(r.t_stat as usize)))
                    .mul(&d_mu);
                let rhs = one
                    .sub(&MultiPoly::var(uni, uni.t(r.h_stat as usize)))
                    .mul(&d_lam);
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

/// Independent count of top-to-bottom chains of `r` connected vertical
/// strips building `μ/λ` (the structure-sheaf support rule at `t = 0`),
/// enumerated recursively from the vertical-strip predicate alone.
pub fn vertical_strip_chains(
    setting: GrassSetting,
    lambda: &Partition,
    mu: &Partition,
    r: usize,
) -> u64 {
    if !mu.contains(lambda) {
        return 0;
    }
    if r == 0 {
        return u64::from(lambda == mu);
    }
    let boxes = skew_boxes(lambda, mu);
    if boxes.is_empty() {
        return 0;
    }
    // the first strip must contain the topmost skew box; later strips lie
    // strictly below it, so heads descend
    let top_row = boxes.iter().map(|&(row, _)| row).min().unwrap();
    let mut count = 0;
    for nu in partitions_in_rectangle(setting) {
        if !nu.contains(lambda) || !mu.contains(&nu) || nu == *lambda {
            continue;
        }
        if crate::shapes::vertical_strip_components(lambda, &nu) != Some(1) {
            continue;
        }
        let strip_boxes = skew_boxes(lambda, &nu);
        let strip_top = strip_boxes.iter().map(|&(row, _)| row).min().unwrap();
        if strip_top != top_row {
            continue;
        }
        let strip_bottom = strip_boxes.iter().map(|&(row, _)| row).max().unwrap();
        let rest = skew_boxes(&nu, mu);
        if rest.iter().any(|&(row, _)| row <= strip_bottom) {
            continue;
        }
        count += vertical_strip_chains(setting, &nu, mu, r - 1);
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_poly;
    use num::Zero;

    fn setting(n: usize, k: usize) -> GrassSetting {
        GrassSetting::new(n, k).unwrap()
    }

    fn part(s: GrassSetting, v: Vec<u32>) -> Partition {
        Partition::new(s, v).unwrap()
    }

    #[test]
    fn head_valued_head_anchored_display() {
        // row-2 operator on (3,1,0) in the 3x4 rectangle: five terms
        let s = setting(7, 3);
        let uni = VarUniverse::new(7);
        let lam = part(s, vec![3, 1, 0]);
        let v = GrassClassVector::single(uni, lam.clone());
        let got = apply_op(s, RibbonOpKind::adding(Anchor::Head, ValueSide::Head), 2, &v);
        let expect = |e: &str| parse_poly(uni, e).unwrap();
        assert_eq!(got.coefficient(&lam), expect("t3"));
        assert_eq!(
            got.coefficient(&part(s, vec![3, 2, 0])),
            expect("h - (p-q)*t4")
        );
        assert_eq!(
            got.coefficient(&part(s, vec![3, 3, 0])),
            expect("(h - (p-q)*t5)*q")
        );
        assert_eq!(
            got.coefficient(&part(s, vec![3, 2, 2])),
            expect("(h - (p-q)*t4)*p*q")
        );
        assert_eq!(
            got.coefficient(&part(s, vec![3, 3, 2])),
            expect("(h - (p-q)*t5)*p*q^2")
        );
        assert_eq!(got.terms.len(), 5);
    }

    #[test]
    fn tail_valued_head_anchored_display() {
        // same shapes, t-labels 3,3,3,1,1
        let s = setting(7, 3);
        let uni = VarUniverse::new(7);
        let lam = part(s, vec![3, 1, 0]);
        let v = GrassClassVector::single(uni, lam.clone());
        let got = apply_op(s, RibbonOpKind::adding(Anchor::Head, ValueSide::Tail), 2, &v);
        let expect = |e: &str| parse_poly(uni, e).unwrap();
        assert_eq!(got.coefficient(&lam), expect("t3"));
        assert_eq!(
            got.coefficient(&part(s, vec![3, 2, 0])),
            expect("h - (p-q)*t3")
        );
        assert_eq!(
            got.coefficient(&part(s, vec![3, 3, 0])),
            expect("(h - (p-q)*t3)*q")
        );
        assert_eq!(
            got.coefficient(&part(s, vec![3, 2, 2])),
            expect("(h - (p-q)*t1)*p*q")
        );
        assert_eq!(
            got.coefficient(&part(s, vec![3, 3, 2])),
            expect("(h - (p-q)*t1)*p*q^2")
        );
    }

    #[test]
    fn deleting_operators_display() {
        // deleting from (3,1,0), anchored in row 2
        let s = setting(7, 3);
        let uni = VarUniverse::new(7);
        let mu = part(s, vec![3, 1, 0]);
        let v = GrassClassVector::single(uni, mu.clone());
        let expect = |e: &str| parse_poly(uni, e).unwrap();

        let fhead = apply_op(s, RibbonOpKind::deleting(Anchor::Head, ValueSide::Head), 2, &v);
        assert_eq!(fhead.coefficient(&mu), expect("t3"));
        assert_eq!(
            fhead.coefficient(&part(s, vec![3, 0, 0])),
            expect("h - (p-q)*t3")
        );
        assert_eq!(fhead.terms.len(), 2);

        let xftail = apply_op(s, RibbonOpKind::deleting(Anchor::Tail, ValueSide::Head), 2, &v);
        assert_eq!(xftail.coefficient(&mu), expect("t3"));
        assert_eq!(
            xftail.coefficient(&part(s, vec![3, 0, 0])),
            expect("h - (p-q)*t3")
        );
        assert_eq!(
            xftail.coefficient(&part(s, vec![0, 0, 0])),
            expect("(h - (p-q)*t6)*p*q^2")
        );

        let ftail = apply_op(s, RibbonOpKind::deleting(Anchor::Tail, ValueSide::Tail), 2, &v);
        assert_eq!(
            ftail.coefficient(&part(s, vec![3, 0, 0])),
            expect("h - (p-q)*t2")
        );
        assert_eq!(
            ftail.coefficient(&part(s, vec![0, 0, 0])),
            expect("(h - (p-q)*t2)*p*q^2")
        );
    }

    #[test]
    fn full_rectangle_only_diagonal() {
        let s = setting(7, 3);
        let uni = VarUniverse::new(7);
        let full = Partition::full(s);
        for anchor in [Anchor::Head, Anchor::Tail] {
            for value in [ValueSide::Head, ValueSide::Tail] {
                let got = apply_op(
                    s,
                    RibbonOpKind::adding(anchor, value),
                    2,
                    &GrassClassVector::single(uni, full.clone()),
                );
                assert_eq!(got.terms.len(), 1);
                // c = μ_2 + k + 1 - 2 = 4 + 2 = 6
                assert_eq!(got.coefficient(&full), parse_poly(uni, "t6").unwrap());
            }
        }
    }

    #[test]
    fn pieri_r_zero_is_identity() {
        let s = setting(5, 2);
        let lam = part(s, vec![2, 0]);
        for kind in ClassKind::ALL {
            let got = pieri(s, kind, &lam, 0).unwrap();
            assert_eq!(got.terms.len(), 1);
            assert!(got.coefficient(&lam).is_one(), "{kind:?}");
        }
    }

    #[test]
    fn pieri_r_out_of_range() {
        let s = setting(5, 2);
        let lam = part(s, vec![2, 0]);
        assert!(pieri(s, ClassKind::MotivicChern, &lam, 3).is_err());
    }

    #[test]
    fn golden_intro_motivic_expansion() {
        let s = setting(5, 2);
        let uni = VarUniverse::new(5);
        let lam = part(s, vec![2, 0]);
        let got = pieri(s, ClassKind::MotivicChern, &lam, 2).unwrap();
        let expect = |e: &str| parse_poly(uni, e).unwrap();
        assert_eq!(got.coefficient(&part(s, vec![2, 0])), expect("t1*t4"));
        assert_eq!(
            got.coefficient(&part(s, vec![2, 1])),
            expect("(1+y)*(1-t2)*t4")
        );
        assert_eq!(
            got.coefficient(&part(s, vec![2, 2])),
            expect("0-y*(1+y)*(1-t3)*t4")
        );
        assert_eq!(
            got.coefficient(&part(s, vec![3, 0])),
            expect("(1+y)*t1*(1-t5)")
        );
        assert_eq!(
            got.coefficient(&part(s, vec![3, 1])),
            expect("(1+y)^2*(1-t2)*(1-t5)")
        );
        assert_eq!(
            got.coefficient(&part(s, vec![3, 2])),
            expect("0-y*(1+y)^2*(1-t3)*(1-t5)")
        );
        assert_eq!(
            got.coefficient(&part(s, vec![3, 3])),
            expect("y^2*(1+y)^2*(1-t4)*(1-t5) + y^2*(1+y)*t4*(1-t5)")
        );
        assert_eq!(got.terms.len(), 7);
    }

    #[test]
    fn refined_ops_regroup_to_head_operator() {
        // summing v_{ab} over pairs whose ribbon (or diagonal label) sits in
        // head row i reproduces the row-i head-valued operator
        let s = setting(6, 3);
        let uni = VarUniverse::new(6);
        for lam in partitions_in_rectangle(s) {
            let v = GrassClassVector::single(uni, lam.clone());
            for i in 1..=s.k {
                let direct =
                    apply_op(s, RibbonOpKind::adding(Anchor::Head, ValueSide::Head), i, &v);
                let mut sum = GrassClassVector::zero(uni);
                let c = lam.part(i) + (s.k + 1 - i) as u32;
                sum.add_assign(&refined_op(s, c, c, &v).unwrap());
                for b in 1..=(s.n as u32) {
                    for a in 1..b {
                        let piece = refined_op(s, a, b, &v).unwrap();
                        for (mu, coeff) in piece.terms {
                            let r = crate::shapes::ribbon_between(s, &lam, &mu).unwrap();
                            if r.head_row == i {
                                sum.add_term(mu, coeff);
                            }
                        }
                    }
                }
                assert_eq!(sum, direct, "lam={lam} i={i}");
            }
        }
    }

    #[test]
    fn refined_zero_cases() {
        let s = setting(5, 2);
        let uni = VarUniverse::new(5);
        let lam = part(s, vec![2, 0]);
        let v = GrassClassVector::single(uni, lam.clone());
        // diagonal labels of (2,0) are {4, 1}; 2 is not one of them
        assert!(refined_op(s, 2, 2, &v).unwrap().is_zero());
        assert!(refined_op(s, 4, 6, &v).unwrap().is_zero());
        assert!(refined_op(s, 3, 2, &v).is_err());
    }

    #[test]
    fn omega_pieri_matches_dualizing_kind() {
        let s = setting(5, 2);
        for lam in partitions_in_rectangle(s) {
            for r in 0..=2 {
                let a = omega_pieri(s, &lam, r).unwrap();
                let b = pieri(s, ClassKind::DualizingSheaf, &lam, r).unwrap();
                assert_eq!(a, b, "lam={lam} r={r}");
            }
        }
    }

    #[test]
    fn intertwining_small() {
        for n in 2..=5 {
            for k in 1..n {
                assert!(intertwining_holds(setting(n, k)), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn intertwining_operator_identity() {
        // L o (tail-sum) = (head-sum) o L at (p,q,h) = (1,-y,1+y), as an
        // operator identity on all basis vectors.
        let s = setting(4, 2);
        let uni = VarUniverse::new(4);
        let mc = ClassKind::MotivicChern.param_spec(uni);
        for lam in partitions_in_rectangle(s) {
            for r in 0..=s.k {
                let v = GrassClassVector::single(uni, lam.clone());
                let tail_sum = chain_sum(
                    s,
                    RibbonOpKind::adding(Anchor::Tail, ValueSide::Tail),
                    &v,
                    r,
                )
                .specialize(&mc);
                let mut lhs = GrassClassVector::zero(uni);
                for (nu, c) in &tail_sum.terms {
                    lhs.add_term(nu.clone(), c.mul(&d_factor(s, uni, nu)));
                }
                let lv = v.scale(&d_factor(s, uni, &lam));
                let rhs = chain_sum(
                    s,
                    RibbonOpKind::adding(Anchor::Head, ValueSide::Head),
                    &lv,
                    r,
                )
                .specialize(&mc);
                assert_eq!(lhs, rhs, "lam={lam} r={r}");
            }
        }
    }

    #[test]
    fn y_zero_ladder_small() {
        let s = setting(4, 2);
        let uni = VarUniverse::new(4);
        let y0 = ParamSpec::new().set_rat(uni, VarUniverse::Y, Rational::zero());
        for lam in partitions_in_rectangle(s) {
            for r in 0..=2 {
                let mc = pieri(s, ClassKind::MotivicChern, &lam, r).unwrap();
                let ideal = pieri(s, ClassKind::IdealSheaf, &lam, r).unwrap();
                assert_eq!(mc.specialize(&y0), ideal, "MC->Ideal lam={lam} r={r}");
                let smc = pieri(s, ClassKind::SegreMotivic, &lam, r).unwrap();
                let o = pieri(s, ClassKind::StructureSheaf, &lam, r).unwrap();
                assert_eq!(smc.specialize(&y0), o, "SMC->O lam={lam} r={r}");
            }
        }
    }

    #[test]
    fn schubert_vertical_strip_rule_small() {
        let s = setting(5, 2);
        let uni = VarUniverse::new(5);
        let t0 = ParamSpec::zero_t(uni);
        for lam in partitions_in_rectangle(s) {
            for r in 0..=2 {
                let exp = pieri(s, ClassKind::Schubert, &lam, r)
                    .unwrap()
                    .specialize(&t0);
                for mu in partitions_in_rectangle(s) {
                    let c = exp.coefficient(&mu);
                    let is_strip = crate::shapes::is_vertical_strip(&lam, &mu)
                        && mu.size() - lam.size() == r as u32;
                    if is_strip {
                        assert!(c.is_one(), "lam={lam} mu={mu} r={r}: {c}");
                    } else {
                        assert!(c.is_zero(), "lam={lam} mu={mu} r={r}: {c}");
                    }
                }
            }
        }
    }

    #[test]
    fn opposite_cells_cross_check() {
        let s = setting(4, 2);
        for mu in partitions_in_rectangle(s) {
            for r in 0..=2 {
                let (direct, twisted) = pieri_opposite_cells(s, &mu, r).unwrap();
                assert_eq!(direct, twisted, "mu={mu} r={r}");
            }
        }
    }

    #[test]
    fn csm_head_tail_coincide_at_p_equals_q() {
        let s = setting(5, 2);
        let uni = VarUniverse::new(5);
        let csm = ClassKind::Csm.param_spec(uni);
        for lam in partitions_in_rectangle(s) {
            for r in 0..=2 {
                let head = pieri_symbolic(s, ValueSide::Head, &lam, r).specialize(&csm);
                let tail = pieri_symbolic(s, ValueSide::Tail, &lam, r).specialize(&csm);
                assert_eq!(head, tail, "lam={lam} r={r}");
            }
        }
    }

    #[test]
    fn vertical_strip_chain_counts() {
        let s = setting(5, 2);
        let lam = part(s, vec![0, 0]);
        let mu = part(s, vec![1, 1]);
        // one column of two boxes: one strip of two, or two strips of one
        assert_eq!(vertical_strip_chains(s, &lam, &mu, 1), 1);
        assert_eq!(vertical_strip_chains(s, &lam, &mu, 2), 1);
        assert_eq!(vertical_strip_chains(s, &lam, &mu, 0), 0);
    }
}
