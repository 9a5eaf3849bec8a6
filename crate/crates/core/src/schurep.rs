//! The abstract Schubert representation: a free module with basis `Y_w`
//! indexed by permutations, the generator action
//! `T_i Y_w = Y_{w s_i}` (length down) or `-(p-q) Y_w + pq Y_{w s_i}`
//! (length up), the evaluation functional supported on `Y_id`, and the
//! x-action whose matrix is the transpose of the normal-ordering
//! coefficients with `x -> t`.
//!
//! Everything here is the brute-force oracle: products `f * Y_λ` for
//! parabolic-symmetric `f` are computed monomial by monomial from the
//! rewriting tables and collapsed to the Grassmannian classes, with a
//! hard error on any nonzero collapse residue.

use std::collections::{BTreeMap, HashMap};

use crate::error::Error;
use crate::exactalg::{Monomial, MultiPoly, Rational, VarUniverse};
use crate::hecke::{Basis, HeckeElement, NormalOrder};
use crate::ribbonops::GrassClassVector;
use crate::shapes::{
    all_permutations, grassmannian_perm, parabolic_elements, partitions_in_rectangle,
    GrassSetting, Partition, Permutation,
};

/// Dense coordinate vector in the `Y_w` basis of a fixed [`SchubertRep`].
#[derive(Debug, Clone, PartialEq)]
pub struct FlagClassVector {
    pub coords: Vec<MultiPoly>,
}

impl FlagClassVector {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, f: &MultiPoly) -> FlagClassVector {
        FlagClassVector {
            coords: self.coords.iter().map(|c| c.mul(f)).collect(),
        }
    }

    pub fn add_assign(&mut self, other: &FlagClassVector) {
        for (a, b) in self.coords.iter_mut().zip(&other.coords) {
            a.add_assign(b);
        }
    }

    pub fn add(&self, other: &FlagClassVector) -> FlagClassVector {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &FlagClassVector) -> FlagClassVector {
        let mut out = self.clone();
        for (a, b) in out.coords.iter_mut().zip(&other.coords) {
            a.add_assign(&b.neg());
        }
        out
    }

    pub fn specialize(&self, s: &crate::exactalg::ParamSpec) -> FlagClassVector {
        FlagClassVector {
            coords: self.coords.iter().map(|c| c.specialize(s)).collect(),
        }
    }
}

/// Rewriting tables for a fixed rank: for each `(w, i)`, the normal-ordered
/// coefficients of `Tbar_w x_i` with `x` renamed to `t`, stored against
/// permutation indices.
pub struct SchubertRep {
    pub uni: VarUniverse,
    pub n: usize,
    pub perms: Vec<Permutation>,
    pub index: HashMap<Permutation, usize>,
    /// `x_cols[i-1][w_idx]` lists `(u_idx, P_{u,w}(t))` where
    /// `Tbar_w x_i = sum_u P_{u,w}(x) Tbar_u`.
    x_cols: Vec<Vec<Vec<(usize, MultiPoly)>>>,
    p_minus_q: MultiPoly,
    pq: MultiPoly,
}

impl SchubertRep {
    pub fn new(n: usize) -> Self {
        let uni = VarUniverse::new(n);
        let perms = all_permutations(n);
        let index: HashMap<Permutation, usize> = perms
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        let mut ctx = NormalOrder::new(uni);
        let first_x = uni.x(1);
        let mut x_cols = Vec::with_capacity(n);
        for i in 1..=n {
            let mut col = Vec::with_capacity(perms.len());
            for w in &perms {
                let prod = ctx.product_x(w, i);
                let mut entries: Vec<(usize, MultiPoly)> = prod
                    .terms
                    .iter()
                    .map(|(u, c)| {
                        let ct = c.map_vars(|v| if v >= first_x { v - n as u16 } else { v });
                        (index[u], ct)
                    })
                    .collect();
                entries.sort_by_key(|&(u, _)| u);
                col.push(entries);
            }
            x_cols.push(col);
        }
        let p_minus_q =
            MultiPoly::var(uni, VarUniverse::P).sub(&MultiPoly::var(uni, VarUniverse::Q));
        let pq = MultiPoly::var(uni, VarUniverse::P).mul(&MultiPoly::var(uni, VarUniverse::Q));
        SchubertRep {
            uni,
            n,
            perms,
            index,
            x_cols,
            p_minus_q,
            pq,
        }
    }

    pub fn zero(&self) -> FlagClassVector {
        FlagClassVector {
            coords: vec![MultiPoly::zero(self.uni); self.perms.len()],
        }
    }

    pub fn basis(&self, w: &Permutation) -> FlagClassVector {
        let mut v = self.zero();
        v.coords[self.index[w]] = MultiPoly::one(self.uni);
        v
    }

    /// `ev`: the coefficient of `Y_id` (so `ev(Y_id) = 1`).
    pub fn ev(&self, v: &FlagClassVector) -> MultiPoly {
        v.coords[self.index[&Permutation::identity(self.n)]].clone()
    }

    /// `T_i . v`.
    pub fn act_t(&self, i: usize, v: &FlagClassVector) -> FlagClassVector {
        let mut out = self.zero();
        for (w_idx, c) in v.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (wsi, up) = self.perms[w_idx].mul_right_s(i);
            let wsi_idx = self.index[&wsi];
            if !up {
                out.coords[wsi_idx].add_assign(c);
            } else {
                out.coords[w_idx].add_assign(&c.mul(&self.p_minus_q).neg());
                out.coords[wsi_idx].add_assign(&c.mul(&self.pq));
            }
        }
        out
    }

    /// `Tbar_i . v = (T_i + p - q) . v`; the two-case form is
    /// `Y_{w s_i} + (p-q) Y_w` (length down) or `pq Y_{w s_i}` (length up).
    pub fn act_tbar(&self, i: usize, v: &FlagClassVector) -> FlagClassVector {
        let mut out = self.zero();
        for (w_idx, c) in v.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (wsi, up) = self.perms[w_idx].mul_right_s(i);
            let wsi_idx = self.index[&wsi];
            if !up {
                out.coords[wsi_idx].add_assign(c);
                out.coords[w_idx].add_assign(&c.mul(&self.p_minus_q));
            } else {
                out.coords[wsi_idx].add_assign(&c.mul(&self.pq));
            }
        }
        out
    }

    /// Act by a word of generators, rightmost letter first.
    pub fn act_word(&self, basis: Basis, word: &[usize], v: &FlagClassVector) -> FlagClassVector {
        let mut cur = v.clone();
        for &i in word.iter().rev() {
            cur = match basis {
                Basis::T => self.act_t(i, &cur),
                Basis::TBar => self.act_tbar(i, &cur),
            };
        }
        cur
    }

    /// Act by an x-free Hecke element.
    pub fn act_element(&self, h: &HeckeElement, v: &FlagClassVector) -> FlagClassVector {
        let mut out = self.zero();
        for (w, c) in &h.terms {
            let part = self.act_word(h.basis, &w.reduced_word(), v);
            out.add_assign(&part.scale(c));
        }
        out
    }

    /// `x_i . v`: coefficient transport along the transposed rewriting
    /// table, `x_i Y_u = sum_w P_{u,w}(t) Y_w`.
    pub fn act_x(&self, i: usize, v: &FlagClassVector) -> FlagClassVector {
        let mut out = self.zero();
        let col = &self.x_cols[i - 1];
        for (w_idx, entries) in col.iter().enumerate() {
            for (u_idx, p) in entries {
                let c = &v.coords[*u_idx];
                if !c.is_zero() {
                    out.coords[w_idx].add_assign(&c.mul(p));
                }
            }
        }
        out
    }

    /// Act by an arbitrary polynomial: x-variables through [`Self::act_x`],
    /// the remaining variables as scalars.
    pub fn act_poly(&self, f: &MultiPoly, v: &FlagClassVector) -> FlagClassVector {
        let uni = self.uni;
        let first_x = uni.x(1);
        let mut out = self.zero();
        for (m, c) in &f.terms {
            let mut scalar_part = Vec::new();
            let mut xs = Vec::new();
            for &(var, e) in &m.0 {
                if var >= first_x {
                    for _ in 0..e {
                        xs.push((var - first_x) as usize + 1);
                    }
                } else {
                    scalar_part.push((var, e));
                }
            }
            let mut cur = v.clone();
            for j in xs {
                cur = self.act_x(j, &cur);
            }
            let mut scalar = MultiPoly::zero(uni);
            scalar.add_term(Monomial::from_pairs(scalar_part), c.clone());
            out.add_assign(&cur.scale(&scalar));
        }
        out
    }

    /// The generic Grassmannian class `Y_λ = sum_v p^{l(v)} Y_{w_λ v}`.
    pub fn grass_class(&self, setting: GrassSetting, lambda: &Partition) -> FlagClassVector {
        let w_lambda = grassmannian_perm(setting, lambda);
        let p = MultiPoly::var(self.uni, VarUniverse::P);
        let mut out = self.zero();
        for v in parabolic_elements(setting) {
            let v = crate::hecke::extend_perm(&v, self.n);
            let w = w_lambda.compose(&v);
            out.coords[self.index[&w]].add_assign(&p.pow(v.length() as u32));
        }
        out
    }

    /// Collapse a vector lying in the span of the `Y_λ` to its coefficients.
    /// The coefficient of `Y_{w_μ}` is exactly the `Y_μ`-coefficient, so a
    /// single sweep in decreasing size determines everything; a nonzero
    /// remainder is an internal consistency error.
    pub fn collapse_to_grass(
        &self,
        setting: GrassSetting,
        v: &FlagClassVector,
    ) -> Result<GrassClassVector, Error> {
        let mut work = v.clone();
        let mut parts = partitions_in_rectangle(setting);
        parts.reverse();
        let mut out = GrassClassVector::zero(self.uni);
        for mu in parts {
            let w_mu = grassmannian_perm(setting, &mu);
            let c = work.coords[self.index[&w_mu]].clone();
            if c.is_zero() {
                continue;
            }
            let cls = self.grass_class(setting, &mu).scale(&c);
            work = work.sub(&cls);
            out.add_term(mu, c);
        }
        if !work.is_zero() {
            return Err(Error::Internal(
                "nonzero residue collapsing to Grassmannian classes".into(),
            ));
        }
        Ok(out)
    }

    /// Is `f` symmetric separately in `x_1..x_k` and `x_{k+1}..x_n`?
    pub fn is_block_symmetric(&self, setting: GrassSetting, f: &MultiPoly) -> bool {
        (1..self.n)
            .filter(|&i| i != setting.k)
            .all(|i| f.swap_vars(self.uni.x(i), self.uni.x(i + 1)) == *f)
    }

    /// The oracle: `f . Y_λ` collapsed to the `Y_μ` basis. `f` must be
    /// `S_k x S_{n-k}`-symmetric; the collapse residue must vanish.
    pub fn oracle_pieri(
        &self,
        setting: GrassSetting,
        lambda: &Partition,
        f: &MultiPoly,
    ) -> Result<GrassClassVector, Error> {
        if !self.is_block_symmetric(setting, f) {
            return Err(Error::Domain(
                "polynomial is not parabolic-symmetric".into(),
            ));
        }
        let v = self.grass_class(setting, lambda);
        let fv = self.act_poly(f, &v);
        self.collapse_to_grass(setting, &fv)
    }

    /// The evaluation functional as a coordinate row.
    pub fn ev_functional(&self) -> Vec<MultiPoly> {
        let mut row = vec![MultiPoly::zero(self.uni); self.perms.len()];
        row[self.index[&Permutation::identity(self.n)]] = MultiPoly::one(self.uni);
        row
    }

    /// Pull a functional back through `Tbar_i`:
    /// `phi'(v) = phi(Tbar_i . v)`.
    pub fn pullback_tbar(&self, i: usize, phi: &[MultiPoly]) -> Vec<MultiPoly> {
        let mut out = vec![MultiPoly::zero(self.uni); phi.len()];
        for (u_idx, slot) in out.iter_mut().enumerate() {
            let (usi, up) = self.perms[u_idx].mul_right_s(i);
            let usi_idx = self.index[&usi];
            if !up {
                // Tbar_i Y_u = Y_{u s_i} + (p-q) Y_u
                *slot = phi[usi_idx].add(&phi[u_idx].mul(&self.p_minus_q));
            } else {
                *slot = phi[usi_idx].mul(&self.pq);
            }
        }
        out
    }

    /// The functional `v -> ev(h . v)` for an x-free Tbar-basis element.
    pub fn functional_for(&self, h: &HeckeElement) -> Vec<MultiPoly> {
        debug_assert_eq!(h.basis, Basis::TBar);
        let ev = self.ev_functional();
        let mut out = vec![MultiPoly::zero(self.uni); self.perms.len()];
        for (w, c) in &h.terms {
            let mut phi = ev.clone();
            // A_w = A_{i_1} o ... o A_{i_l}, so the transpose applies the
            // letters in word order.
            for &i in &w.reduced_word() {
                phi = self.pullback_tbar(i, &phi);
            }
            for (slot, p) in out.iter_mut().zip(&phi) {
                slot.add_assign(&p.mul(c));
            }
        }
        out
    }

    pub fn apply_functional(&self, phi: &[MultiPoly], v: &FlagClassVector) -> MultiPoly {
        let mut acc = MultiPoly::zero(self.uni);
        for (p, c) in phi.iter().zip(&v.coords) {
            if !p.is_zero() && !c.is_zero() {
                acc.add_assign(&p.mul(c));
            }
        }
        acc
    }
}

/// The elementary symmetric polynomial `e_r(x_1..x_k)` in the universe.
pub fn elementary_x(uni: VarUniverse, k: usize, r: usize) -> MultiPoly {
    let mut out = MultiPoly::zero(uni);
    let mut subset: Vec<usize> = Vec::new();
    fn rec(
        uni: VarUniverse,
        out: &mut MultiPoly,
        subset: &mut Vec<usize>,
        next: usize,
        k: usize,
        r: usize,
    ) {
        if subset.len() == r {
            let m = Monomial::from_pairs(subset.iter().map(|&i| (uni.x(i), 1)).collect());
            out.add_term(m, Rational::from_integer(1.into()));
            return;
        }
        for i in next..=k {
            subset.push(i);
            rec(uni, out, subset, i + 1, k, r);
            subset.pop();
        }
    }
    rec(uni, &mut out, &mut subset, 1, k, r);
    out
}

/// Oracle expansion coefficients as a matrix over partition pairs, for
/// transpose/duality comparisons: `entry[(λ, μ)] = coeff of Y_μ in
/// e_r . Y_λ`.
pub fn oracle_matrix(
    rep: &SchubertRep,
    setting: GrassSetting,
    r: usize,
) -> Result<BTreeMap<(Partition, Partition), MultiPoly>, Error> {
    let f = elementary_x(rep.uni, setting.k, r);
    let mut out = BTreeMap::new();
    for lambda in partitions_in_rectangle(setting) {
        let exp = rep.oracle_pieri(setting, &lambda, &f)?;
        for (mu, c) in &exp.terms {
            out.insert((lambda.clone(), mu.clone()), c.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{parse_poly, rat, rat_frac, ParamSpec};
    use crate::hecke::{pi_symmetrizer, sigma, t_lambda, SigmaMode};
    use crate::shapes::parabolic_top_length;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn mc_params(uni: VarUniverse) -> ParamSpec {
        ParamSpec::new()
            .set(VarUniverse::P, MultiPoly::one(uni))
            .set(VarUniverse::Q, parse_poly(uni, "-y").unwrap())
            .set(VarUniverse::H, parse_poly(uni, "1 + y").unwrap())
    }

    fn random_vector(rep: &SchubertRep, rng: &mut StdRng) -> FlagClassVector {
        let mut v = rep.zero();
        for c in v.coords.iter_mut() {
            *c = MultiPoly::int(rep.uni, rng.gen_range(-3..=3));
        }
        v
    }

    #[test]
    fn x_action_rank_two() {
        // x_1 . Y_id = t_1 Y_id + (h - (p-q) t_2) Y_{s_1}
        let rep = SchubertRep::new(2);
        let u = rep.uni;
        let v = rep.basis(&Permutation::identity(2));
        let got = rep.act_x(1, &v);
        let s1 = Permutation::new(vec![2, 1]).unwrap();
        assert_eq!(
            got.coords[rep.index[&Permutation::identity(2)]],
            parse_poly(u, "t1").unwrap()
        );
        assert_eq!(
            got.coords[rep.index[&s1]],
            parse_poly(u, "h - (p - q)*t2").unwrap()
        );
    }

    #[test]
    fn ev_of_x_action_multiplies_by_t() {
        let rep = SchubertRep::new(3);
        let mut rng = StdRng::seed_from_u64(7);
        let v = random_vector(&rep, &mut rng);
        for i in 1..=3 {
            let lhs = rep.ev(&rep.act_x(i, &v));
            let rhs = MultiPoly::var(rep.uni, rep.uni.t(i)).mul(&rep.ev(&v));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn x_actions_commute() {
        let rep = SchubertRep::new(3);
        let mut rng = StdRng::seed_from_u64(11);
        let v = random_vector(&rep, &mut rng);
        let a = rep.act_x(1, &rep.act_x(2, &v));
        let b = rep.act_x(2, &rep.act_x(1, &v));
        assert_eq!(a, b);
    }

    #[test]
    fn quadratic_and_braid_relations_on_vectors() {
        let rep = SchubertRep::new(3);
        let u = rep.uni;
        let mut rng = StdRng::seed_from_u64(13);
        let v = random_vector(&rep, &mut rng);
        for i in 1..=2 {
            // (T_i + p)(T_i - q) v = 0
            let step = rep
                .act_t(i, &v)
                .sub(&v.scale(&MultiPoly::var(u, VarUniverse::Q)));
            let lhs = rep
                .act_t(i, &step)
                .add(&step.scale(&MultiPoly::var(u, VarUniverse::P)));
            assert!(lhs.is_zero());
        }
        let a = rep.act_t(1, &rep.act_t(2, &rep.act_t(1, &v)));
        let b = rep.act_t(2, &rep.act_t(1, &rep.act_t(2, &v)));
        assert_eq!(a, b);
    }

    #[test]
    fn top_class_action_drops() {
        // T_i . Y_{w_0} = Y_{w_0 s_i}
        let rep = SchubertRep::new(3);
        let w0 = Permutation::longest(3);
        let got = rep.act_t(1, &rep.basis(&w0));
        let expected = rep.basis(&w0.mul_right_s(1).0);
        assert_eq!(got, expected);
    }

    #[test]
    fn grass_class_at_p_zero_is_single_term() {
        let rep = SchubertRep::new(4);
        let s = GrassSetting::new(4, 2).unwrap();
        let lam = Partition::new(s, vec![1, 0]).unwrap();
        let cls = rep.grass_class(s, &lam);
        let zero_p = ParamSpec::new().set_rat(rep.uni, VarUniverse::P, rat(0));
        let support: Vec<&Permutation> = rep
            .perms
            .iter()
            .enumerate()
            .filter(|(i, _)| !cls.coords[*i].specialize(&zero_p).is_zero())
            .map(|(_, w)| w)
            .collect();
        assert_eq!(support, vec![&grassmannian_perm(s, &lam)]);
    }

    #[test]
    fn pi_projects_onto_grass_class() {
        // Pi . Y_{w_λ v} = q^{d - l(v)} Y_λ, exhaustively at (k,n) = (2,4)
        let rep = SchubertRep::new(4);
        let s = GrassSetting::new(4, 2).unwrap();
        let d = parabolic_top_length(s) as u32;
        let pi = pi_symmetrizer(rep.uni, s);
        let q = MultiPoly::var(rep.uni, VarUniverse::Q);
        for lam in partitions_in_rectangle(s) {
            let w_lam = grassmannian_perm(s, &lam);
            let y_lam = rep.grass_class(s, &lam);
            for v in parabolic_elements(s) {
                let w = w_lam.compose(&v);
                let got = rep.act_element(&pi, &rep.basis(&w));
                let expected = y_lam.scale(&q.pow(d - v.length() as u32));
                assert_eq!(got, expected, "lam={lam} v={v}");
            }
        }
    }

    #[test]
    fn oracle_identity_is_identity() {
        let rep = SchubertRep::new(4);
        let s = GrassSetting::new(4, 2).unwrap();
        let lam = Partition::new(s, vec![2, 1]).unwrap();
        let one = MultiPoly::one(rep.uni);
        let exp = rep.oracle_pieri(s, &lam, &one).unwrap();
        assert_eq!(exp.terms.len(), 1);
        assert!(exp.terms[&lam].is_one());
    }

    #[test]
    fn oracle_rejects_nonsymmetric_polynomial() {
        let rep = SchubertRep::new(4);
        let s = GrassSetting::new(4, 2).unwrap();
        let lam = Partition::empty(s);
        let f = MultiPoly::var(rep.uni, rep.uni.x(1));
        assert!(rep.oracle_pieri(s, &lam, &f).is_err());
    }

    #[test]
    fn oracle_golden_motivic_coefficient() {
        // e_2(x_1,x_2) . Y_{(2,0)} at (p,q,h) = (1,-y,1+y): the coefficient
        // of Y_{(2,1)} is (1+y)(1-t_2) t_4.
        let rep = SchubertRep::new(5);
        let s = GrassSetting::new(5, 2).unwrap();
        let lam = Partition::new(s, vec![2, 0]).unwrap();
        let f = elementary_x(rep.uni, 2, 2);
        let exp = rep.oracle_pieri(s, &lam, &f).unwrap();
        let mu = Partition::new(s, vec![2, 1]).unwrap();
        let got = exp.terms[&mu].specialize(&mc_params(rep.uni));
        let expected = parse_poly(rep.uni, "(1+y)*(1-t2)*t4").unwrap();
        assert_eq!(got, expected);
    }

    #[test]
    fn duality_and_reconstruction_small() {
        // ev(Tbar_μ . Y_ν) = δ_{μν} at a random nondegenerate rational spec,
        // and the reconstruction formula, at (k,n) = (2,4).
        let rep = SchubertRep::new(4);
        let s = GrassSetting::new(4, 2).unwrap();
        let u = rep.uni;
        let mut ps = ParamSpec::new()
            .set_rat(u, VarUniverse::P, rat(2))
            .set_rat(u, VarUniverse::Q, rat(3))
            .set_rat(u, VarUniverse::H, rat(5));
        for i in 1..=4 {
            ps = ps.set_rat(u, u.t(i), rat_frac(2 * i as i64 + 1, 7));
        }
        let mode = SigmaMode::Specialized(ps.clone());
        let parts = partitions_in_rectangle(s);
        let functionals: Vec<_> = parts
            .iter()
            .map(|mu| {
                let t_mu = t_lambda(u, s, mu, &mode).unwrap();
                rep.functional_for(&t_mu)
            })
            .collect();
        for (mi, mu) in parts.iter().enumerate() {
            for nu in &parts {
                let y_nu = rep.grass_class(s, nu).specialize(&ps);
                let got = rep.apply_functional(&functionals[mi], &y_nu);
                if mu == nu {
                    assert!(got.is_one(), "mu={mu} nu={nu} got {got}");
                } else {
                    assert!(got.is_zero(), "mu={mu} nu={nu} got {got}");
                }
            }
        }
        // reconstruction of a random Y_λ combination from the functionals
        let mut rng = StdRng::seed_from_u64(23);
        let mut v = rep.zero();
        let mut coeffs = Vec::new();
        for lam in &parts {
            let c = MultiPoly::int(u, rng.gen_range(-4..=4));
            coeffs.push(c.clone());
            let cls = rep.grass_class(s, lam);
            v.add_assign(&cls.scale(&c));
        }
        let v_spec = v.specialize(&ps);
        for (i, lam) in parts.iter().enumerate() {
            let got = rep.apply_functional(&functionals[i], &v_spec);
            assert_eq!(got, coeffs[i], "lam={lam}");
        }
        // the 1/([k]![n-k]!) normalization makes ev(Tbar_0 . Y_0) = ev(Y_id)
        let sig = sigma(u, s, &mode).unwrap();
        let f0 = rep.functional_for(&sig);
        let y0 = rep.grass_class(s, &Partition::empty(s)).specialize(&ps);
        assert!(rep.apply_functional(&f0, &y0).is_one());
    }

    #[test]
    fn oracle_actions_commute() {
        // e_1 then e_2 equals e_2 then e_1 on Y_λ at (2,4).
        let rep = SchubertRep::new(4);
        let s = GrassSetting::new(4, 2).unwrap();
        let e1 = elementary_x(rep.uni, 2, 1);
        let e2 = elementary_x(rep.uni, 2, 2);
        let lam = Partition::new(s, vec![1, 0]).unwrap();
        let v = rep.grass_class(s, &lam);
        let a = rep.act_poly(&e1, &rep.act_poly(&e2, &v));
        let b = rep.act_poly(&e2, &rep.act_poly(&e1, &v));
        assert_eq!(a, b);
    }
}
