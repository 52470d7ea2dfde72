use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

/// `[a, b, c, d]` for the matrix `(a b; c d)`, entries reduced mod some `m`.
pub type Mat2 = [u64; 4];

fn mul(x: &Mat2, y: &Mat2, m: u64) -> Mat2 {
    [
        (x[0] * y[0] + x[1] * y[2]) % m,
        (x[0] * y[1] + x[1] * y[3]) % m,
        (x[2] * y[0] + x[3] * y[2]) % m,
        (x[2] * y[1] + x[3] * y[3]) % m,
    ]
}

fn det(x: &Mat2, m: u64) -> u64 {
    (x[0] * x[3] % m + m * m - x[1] * x[2] % m) % m
}

fn inverse(x: &Mat2, m: u64) -> Option<Mat2> {
    let d = det(x, m);
    let di = (1..m).find(|k| d * k % m == 1)?;
    Some([x[3] * di % m, (m - x[1]) * di % m, (m - x[2]) * di % m, x[0] * di % m])
}

/// All of `GL_2(Z/m)`, by filtering `M_2(Z/m)` on invertibility.
pub fn gl2_elements(m: u64) -> Vec<Mat2> {
    let mut out = Vec::new();
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                for d in 0..m {
                    let g = [a, b, c, d];
                    if num_integer::gcd(det(&g, m), m) == 1 {
                        out.push(g);
                    }
                }
            }
        }
    }
    out
}

/// `|GL_2(Z/p^k)| = p^{4(k-1)} (p^2 - 1)(p^2 - p)`.
pub fn gl2_order(p: u64, k: u32) -> u64 {
    p.pow(4 * (k - 1)) * (p * p - 1) * (p * p - p)
}

// M_2(F_2) as 4-bit masks, bit i = entry i of [a, b, c, d].
fn to_bits(x: &Mat2) -> u8 {
    x.iter().enumerate().fold(0, |acc, (i, &e)| acc | (((e & 1) as u8) << i))
}

fn from_bits(v: u8) -> Mat2 {
    [0, 1, 2, 3].map(|i| u64::from(v >> i & 1))
}

fn span(gens: &[u8]) -> BTreeSet<u8> {
    let mut s = BTreeSet::from([0u8]);
    for &g in gens {
        let more: Vec<u8> = s.iter().map(|x| x ^ g).collect();
        s.extend(more);
    }
    s
}

fn bits_of(rows: &[Mat2]) -> Vec<u8> {
    rows.iter().map(to_bits).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeReport {
    /// Every submodule, as a sorted list of 4-bit matrices.
    pub submodules: Vec<Vec<u8>>,
    pub nontrivial_proper: usize,
    pub matches_named: bool,
    pub v1_in_v2_1: bool,
    pub v2_2_in_v3: bool,
    pub direct_sum: bool,
    pub v4_over_v3: usize,
}

/// Named submodules `V1, V2(1), V2(2), V3` of `M_2(F_2)`.
pub fn named_submodules() -> [BTreeSet<u8>; 4] {
    let v1 = span(&bits_of(&[[1, 0, 0, 1]]));
    let v21 = span(&bits_of(&[[0, 1, 1, 1], [1, 1, 1, 0]]));
    let v22 = span(&bits_of(&[[1, 1, 0, 1], [1, 0, 1, 1]]));
    let v3: BTreeSet<u8> = (0..16u8).filter(|&v| (v & 1) == (v >> 3 & 1)).collect();
    [v1, v21, v22, v3]
}

/// Submodules of `M_2(F_2)` under conjugation by `GL_2(F_2)`, found by
/// scanning all `2^16` subsets.
pub fn verify_submodule_lattice() -> LatticeReport {
    let gens: [Mat2; 2] = [[0, 1, 1, 0], [0, 1, 1, 1]];
    let conj: Vec<[u8; 16]> = gens
        .iter()
        .map(|g| {
            let gi = inverse(g, 2).expect("invertible");
            let mut t = [0u8; 16];
            for (v, slot) in t.iter_mut().enumerate() {
                *slot = to_bits(&mul(&mul(g, &from_bits(v as u8), 2), &gi, 2));
            }
            t
        })
        .collect();
    let mut subs = Vec::new();
    for mask in 1u32..(1 << 16) {
        if mask & 1 == 0 {
            continue;
        }
        let has = |v: u8| mask >> v & 1 == 1;
        let members: Vec<u8> = (0..16u8).filter(|&v| has(v)).collect();
        let closed = members.iter().all(|&a| members.iter().all(|&b| has(a ^ b)))
            && members.iter().all(|&a| conj.iter().all(|t| has(t[a as usize])));
        if closed {
            subs.push(members);
        }
    }
    let [v1, v21, v22, v3] = named_submodules();
    let found: BTreeSet<BTreeSet<u8>> = subs.iter().map(|s| s.iter().copied().collect()).collect();
    let named: BTreeSet<BTreeSet<u8>> = [BTreeSet::from([0]), v1.clone(), v21.clone(), v22.clone(), v3.clone(), (0..16).collect()]
        .into_iter()
        .collect();
    let sum: BTreeSet<u8> = v21.iter().flat_map(|a| v22.iter().map(move |b| a ^ b)).collect();
    LatticeReport {
        nontrivial_proper: subs.len().saturating_sub(2),
        matches_named: found == named,
        v1_in_v2_1: v1.is_subset(&v21),
        v2_2_in_v3: v22.is_subset(&v3),
        direct_sum: sum.len() == 16 && v21.intersection(&v22).count() == 1,
        v4_over_v3: 16 / v3.len(),
        submodules: subs,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HStructureReport {
    /// `|H_1 / H_3|`.
    pub h1_order: usize,
    pub h2_order: usize,
    /// Order of the image of the group generated by squares.
    pub squares_order: usize,
    pub matches_det_description: bool,
    pub index_h2: usize,
    pub index_h1: usize,
    pub det_square_is_one: bool,
    pub normal_in_gl2: bool,
}

fn h_level(step: u64) -> Vec<Mat2> {
    // 1 + step * M mod 8
    let r = 8 / step;
    let mut out = Vec::new();
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                for d in 0..r {
                    out.push([(1 + step * a) % 8, step * b % 8, step * c % 8, (1 + step * d) % 8]);
                }
            }
        }
    }
    out
}

fn closure(gens: &[Mat2], m: u64) -> BTreeSet<Mat2> {
    let mut group = BTreeSet::from([[1, 0, 0, 1]]);
    let mut frontier = vec![[1, 0, 0, 1]];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = mul(&x, g, m);
            if group.insert(y) {
                frontier.push(y);
            }
        }
    }
    group
}

/// The subgroup generated by squares of `H_1 = 1 + 2 M_2(Z_2)`, worked out
/// in `H_1 / H_3` (matrices mod 8).
pub fn verify_h_structure() -> HStructureReport {
    let h1 = h_level(2);
    let h2 = h_level(4);
    let squares: Vec<Mat2> = h1.iter().map(|h| mul(h, h, 8)).collect();
    let cal_h = closure(&squares, 8);
    let by_det: BTreeSet<Mat2> = h2.iter().copied().filter(|g| det(g, 8) == 1).collect();
    let normal_in_gl2 = gl2_elements(8).iter().all(|g| {
        let gi = inverse(g, 8).expect("unit");
        cal_h.iter().all(|h| cal_h.contains(&mul(&mul(g, h, 8), &gi, 8)))
    });
    HStructureReport {
        h1_order: h1.len(),
        h2_order: h2.len(),
        squares_order: cal_h.len(),
        matches_det_description: cal_h == by_det,
        index_h2: h2.len() / cal_h.len(),
        index_h1: h1.len() / cal_h.len(),
        det_square_is_one: squares.iter().all(|s| det(s, 8) == 1),
        normal_in_gl2,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InertiaReport {
    pub span: Vec<u8>,
    pub meet_v2_1: Vec<u8>,
    pub meet_v2_2: Vec<u8>,
}

/// Span of `(0 0; 0 1)` and `(0 0; 1 0)` in `M_2(F_2)`, intersected with
/// `V2(1)` and `V2(2)`.
pub fn verify_inertia_matrices() -> InertiaReport {
    let s = span(&bits_of(&[[0, 0, 0, 1], [0, 0, 1, 0]]));
    let [_, v21, v22, _] = named_submodules();
    InertiaReport {
        span: s.iter().copied().collect(),
        meet_v2_1: s.intersection(&v21).copied().collect(),
        meet_v2_2: s.intersection(&v22).copied().collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupTheoryReport {
    pub lattice: LatticeReport,
    pub h_structure: HStructureReport,
    pub inertia: InertiaReport,
}

impl GroupTheoryReport {
    pub fn run() -> Self {
        GroupTheoryReport {
            lattice: verify_submodule_lattice(),
            h_structure: verify_h_structure(),
            inertia: verify_inertia_matrices(),
        }
    }

    pub fn passed(&self) -> bool {
        let l = &self.lattice;
        let h = &self.h_structure;
        l.nontrivial_proper == 4
            && l.matches_named
            && l.v1_in_v2_1
            && l.v2_2_in_v3
            && l.direct_sum
            && l.v4_over_v3 == 2
            && h.matches_det_description
            && h.index_h2 == 2
            && h.index_h1 == 32
            && h.det_square_is_one
            && h.normal_in_gl2
            && self.inertia.meet_v2_1 == [0]
    }
}
