//! Design isomorphism and monomial equivalence of ternary codes.
//!
//! Both reduce to canonical labeling of colored graphs ([`crate::canon`]).
//! A design becomes its bipartite point/block incidence graph. A code of
//! minimum weight `d` becomes a graph on the signed coordinates `(i, ±)`,
//! each pair joined by an edge, and on all words `c` of weight `d, d+1, …, w`,
//! with `c` joined to `(i, c_i)` for each `i` in its support and colored by
//! its weight; `w` is the least weight at which these words span the code.
//! Monomial maps of the code permute these graphs, and a graph isomorphism
//! maps the code onto the other whenever the words span. When the
//! enumeration ceiling stops the search for `w`, the isomorphisms form a
//! coset of the automorphism group, which is searched in full.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::canon::{canonize, Graph};
use crate::code::{Monomial, TernaryCode};
use crate::design::IncidenceStructure;
use crate::error::{bail, Result};
use crate::exec::Executor;
use crate::gf3::{Trit, TritMatrix, TritVector};
use crate::perm::Permutation;
use crate::weight::Enumerator;

/// Largest automorphism group searched element by element when the
/// low-weight words do not span the code.
pub const MAX_COSET_SEARCH: u128 = 1 << 22;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub canonical_matrix: IncidenceStructure,
    pub aut_order: u128,
    /// Point and block relabeling taking the input to `canonical_matrix`.
    pub point_perm: Permutation,
    pub block_perm: Permutation,
}

impl CanonicalForm {
    /// One line: the automorphism group order, then each canonical block as
    /// hexadecimal digits of its incidence bits.
    pub fn key(&self) -> String {
        let mut s = String::new();
        let _ = write!(s, "{}", self.aut_order);
        for row in self.canonical_matrix.to_rows() {
            s.push(' ');
            for chunk in row.chunks(4) {
                let nibble = chunk.iter().enumerate().fold(0u8, |a, (k, &b)| a | b << (3 - k));
                s.push(char::from_digit(nibble as u32, 16).expect("nibble"));
            }
        }
        s
    }
}

/// Histogram of `|R_x ∩ R_y ∩ R_z|` over pairs `{y, z}` not containing `x`,
/// for each row `x` of `m`.
fn triple_profiles(m: &IncidenceStructure) -> Vec<Vec<u32>> {
    let n = m.blocks();
    (0..n)
        .map(|x| {
            let mut hist: Vec<u32> = Vec::new();
            let rx = m.block(x);
            for y in 0..n {
                if y == x {
                    continue;
                }
                let rxy: Vec<u64> = rx.iter().zip(m.block(y)).map(|(a, b)| a & b).collect();
                for z in y + 1..n {
                    if z == x {
                        continue;
                    }
                    let c: usize = rxy.iter().zip(m.block(z)).map(|(a, b)| (a & b).count_ones() as usize).sum();
                    if hist.len() <= c {
                        hist.resize(c + 1, 0);
                    }
                    hist[c] += 1;
                }
            }
            hist
        })
        .collect()
}

/// Ranks of `keys` among their distinct values.
fn ranks<T: Ord + Clone>(keys: &[T]) -> Vec<u64> {
    let distinct: BTreeSet<T> = keys.iter().cloned().collect();
    let order: Vec<T> = distinct.into_iter().collect();
    keys.iter().map(|k| order.binary_search(k).expect("present") as u64).collect()
}

/// Canonical form and automorphism group order of an incidence structure.
pub fn canonical_design(d: &IncidenceStructure) -> CanonicalForm {
    let (v, b) = (d.points(), d.blocks());
    let mut edges = Vec::new();
    for i in 0..b {
        for x in d.block_points(i) {
            edges.push((x as u32, (v + i) as u32));
        }
    }
    let g = Graph::from_edges(v + b, &edges);
    let point_rank = ranks(&triple_profiles(&d.transpose()));
    let block_rank = ranks(&triple_profiles(d));
    let colors: Vec<u64> = point_rank
        .iter()
        .copied()
        .chain(block_rank.iter().map(|&r| (1u64 << 32) | r))
        .collect();
    let c = canonize(&g, &colors);
    let point_perm = Permutation::new((0..v).map(|x| c.position[x] as usize).collect()).expect("points first");
    let block_perm = Permutation::new((0..b).map(|i| c.position[v + i] as usize - v).collect()).expect("blocks last");
    CanonicalForm {
        canonical_matrix: d.relabel(&point_perm, &block_perm),
        aut_order: c.aut_order,
        point_perm,
        block_perm,
    }
}

/// Invariants of a code under monomial maps, from its minimum-weight words.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CodeFingerprint {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    /// Number of codewords of weight `d`, both signs counted.
    pub a_d: u64,
    /// `|supp(u) ∩ supp(v)|` over unordered pairs of weight-`d` supports
    /// (one support per `±` pair), as size → multiplicity.
    pub intersections: BTreeMap<usize, u64>,
    /// Number of weight-`d` supports through each coordinate, sorted.
    pub degrees: Vec<u64>,
}

impl CodeFingerprint {
    /// One deterministic line of `key=value` fields.
    pub fn key(&self) -> String {
        let mut s = String::new();
        let _ = write!(s, "n={} k={} d={} A={} I=", self.n, self.k, self.d, self.a_d);
        for (i, (size, count)) in self.intersections.iter().enumerate() {
            let _ = write!(s, "{}{size}:{count}", if i > 0 { "," } else { "" });
        }
        s.push_str(" D=");
        for (i, x) in self.degrees.iter().enumerate() {
            let _ = write!(s, "{}{x}", if i > 0 { "," } else { "" });
        }
        s
    }
}

fn support_mask(w: &TritVector) -> Vec<u64> {
    w.words().iter().map(|x| x.support()).collect()
}

fn fingerprint_of(c: &TernaryCode, d: usize, words: &[TritVector]) -> CodeFingerprint {
    let n = c.length();
    let masks: Vec<Vec<u64>> = words.iter().map(support_mask).collect();
    let mut intersections = BTreeMap::new();
    for (a, ma) in masks.iter().enumerate() {
        for mb in &masks[a + 1..] {
            let s: usize = ma.iter().zip(mb).map(|(x, y)| (x & y).count_ones() as usize).sum();
            *intersections.entry(s).or_insert(0) += 1;
        }
    }
    let mut degrees = alloc::vec![0u64; n];
    for w in words {
        for i in w.support() {
            degrees[i] += 1;
        }
    }
    degrees.sort_unstable();
    CodeFingerprint {
        n,
        k: c.dimension(),
        d,
        a_d: 2 * words.len() as u64,
        intersections,
        degrees,
    }
}

/// Minimum weight and the minimum-weight words, one per `±` pair.
fn min_words<E: Executor>(c: &TernaryCode, exec: &E) -> Result<(usize, Vec<TritVector>)> {
    if c.dimension() == 0 {
        bail!(Parameter, "the zero code has no minimum weight");
    }
    let en = Enumerator::new(c)?;
    let d = en.min_weight(exec)?;
    Ok((d, en.words_of_weight(d, exec)?))
}

pub fn fingerprint<E: Executor>(c: &TernaryCode, exec: &E) -> Result<CodeFingerprint> {
    let (d, words) = min_words(c, exec)?;
    Ok(fingerprint_of(c, d, &words))
}

/// A code with its fingerprint and a canonical labeling of its
/// low-weight graph.
#[derive(Clone, Debug)]
pub struct CodeCanon {
    pub fingerprint: CodeFingerprint,
    /// Canonical adjacency of the low-weight graph.
    pub certificate: Vec<u32>,
    /// Whether the words in the graph span the code.
    pub spans: bool,
    /// Order of the group of monomial maps preserving the low-weight
    /// words.
    pub aut_order: u128,
    position: Vec<u32>,
    order: Vec<u32>,
    generators: Vec<Monomial>,
}

/// Monomial map read off a graph map on the signed coordinates.
fn coordinate_map(images: impl Fn(usize) -> usize, n: usize) -> Monomial {
    let mut perm = alloc::vec![0usize; n];
    let mut signs = alloc::vec![Trit::ONE; n];
    for i in 0..n {
        let t = images(2 * i);
        perm[i] = t / 2;
        if t % 2 == 1 {
            signs[i] = Trit::TWO;
        }
    }
    Monomial::new(Permutation::new(perm).expect("coordinate pairs map to pairs"), signs).expect("nonzero signs")
}

pub fn code_canon<E: Executor>(c: &TernaryCode, exec: &E) -> Result<CodeCanon> {
    let n = c.length();
    if c.dimension() == 0 {
        bail!(Parameter, "the zero code has no minimum weight");
    }
    let en = Enumerator::new(c)?;
    let d = en.min_weight(exec)?;
    let mut words = en.words_of_weight(d, exec)?;
    let fingerprint = fingerprint_of(c, d, &words);
    let mut weights = alloc::vec![d; words.len()];
    let rank = |words: &[TritVector]| TritMatrix::from_vectors(n, words).map(|m| m.rank()).unwrap_or(0);
    let mut spans = rank(&words) == c.dimension();
    // add the next weights until the words span, as far as the ceiling allows
    let mut w = d;
    while !spans && w < n {
        w += 1;
        let more = match en.words_of_weight(w, exec) {
            Ok(more) => more,
            Err(crate::Error::Ceiling(_)) => break,
            Err(e) => return Err(e),
        };
        weights.extend(core::iter::repeat_n(w, more.len()));
        words.extend(more);
        spans = rank(&words) == c.dimension();
    }
    // vertices: 2i and 2i+1 are (i,+) and (i,-); then c and -c for each word
    let m = words.len();
    let mut edges: Vec<(u32, u32)> = (0..n).map(|i| (2 * i as u32, 2 * i as u32 + 1)).collect();
    for (w, word) in words.iter().enumerate() {
        for (sign, vertex) in [(0u32, 2 * n + 2 * w), (1, 2 * n + 2 * w + 1)] {
            for i in word.support() {
                let neg = (word.get(i) == Trit::TWO) as u32 ^ sign;
                edges.push((vertex as u32, 2 * i as u32 + neg));
            }
        }
    }
    let g = Graph::from_edges(2 * n + 2 * m, &edges);
    let levels: Vec<usize> = weights.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let mut pair = alloc::vec![alloc::vec![alloc::vec![0u32; n]; n]; levels.len()];
    for (word, wt) in words.iter().zip(&weights) {
        let l = levels.binary_search(wt).expect("listed");
        let s = word.support();
        for &a in &s {
            for &b in &s {
                if a != b {
                    pair[l][a][b] += 1;
                }
            }
        }
    }
    let profiles: Vec<Vec<u32>> = (0..n)
        .map(|a| {
            pair.iter()
                .flat_map(|p| {
                    let mut r = p[a].clone();
                    r.sort_unstable();
                    r
                })
                .collect()
        })
        .collect();
    let coord_rank = ranks(&profiles);
    let colors: Vec<u64> = (0..2 * n)
        .map(|v| coord_rank[v / 2])
        .chain(weights.iter().flat_map(|&w| [1u64 << 32 | w as u64; 2]))
        .collect();
    let canon = canonize(&g, &colors);
    let generators = canon
        .generators
        .iter()
        .map(|gen| coordinate_map(|v| gen[v] as usize, n))
        .collect();
    Ok(CodeCanon {
        fingerprint,
        certificate: canon.certificate,
        spans,
        aut_order: canon.aut_order,
        position: canon.position,
        order: canon.order,
        generators,
    })
}

/// Every element of the group generated by `gens`.
fn closure(n: usize, gens: &[Monomial]) -> Vec<Monomial> {
    let key = |m: &Monomial| -> Vec<u16> {
        (0..n)
            .map(|i| (m.perm.apply(i) as u16) << 1 | (m.signs[i] == Trit::TWO) as u16)
            .collect()
    };
    let id = Monomial::identity(n);
    let mut seen = BTreeSet::new();
    seen.insert(key(&id));
    let mut all = alloc::vec![id];
    let mut next = 0;
    while next < all.len() {
        let cur = all[next].clone();
        next += 1;
        for g in gens {
            let m = g.compose(&cur);
            if seen.insert(key(&m)) {
                all.push(m);
            }
        }
    }
    all
}

/// A monomial map carrying `c1` onto `c2`, given their canonical data.
pub fn transporter(c1: &TernaryCode, a: &CodeCanon, c2: &TernaryCode, b: &CodeCanon) -> Result<Option<Monomial>> {
    if c1.length() != c2.length()
        || c1.dimension() != c2.dimension()
        || a.fingerprint != b.fingerprint
        || a.certificate != b.certificate
    {
        return Ok(None);
    }
    let n = c1.length();
    // a vertex of the first graph goes to the vertex of the second at the
    // same canonical position
    let tau = coordinate_map(|v| b.order[a.position[v] as usize] as usize, n);
    if tau.maps_code(c1, c2) {
        return Ok(Some(tau));
    }
    if a.spans {
        bail!(Invariant, "graph isomorphism of spanning low-weight words does not map the code");
    }
    if a.aut_order > MAX_COSET_SEARCH {
        bail!(
            Ceiling,
            "low-weight words do not span and their automorphism group has order {} > {}",
            a.aut_order,
            MAX_COSET_SEARCH
        );
    }
    let group = closure(n, &a.generators);
    if group.len() as u128 != a.aut_order {
        bail!(Invariant, "generated {} automorphisms, expected {}", group.len(), a.aut_order);
    }
    Ok(group.iter().map(|alpha| tau.compose(alpha)).find(|m| m.maps_code(c1, c2)))
}

/// Decides monomial equivalence; a returned map is checked to carry `c1`
/// onto `c2`.
pub fn monomially_equivalent<E: Executor>(c1: &TernaryCode, c2: &TernaryCode, exec: &E) -> Result<Option<Monomial>> {
    if c1.length() != c2.length() || c1.dimension() != c2.dimension() {
        return Ok(None);
    }
    if c1.dimension() == 0 {
        return Ok(Some(Monomial::identity(c1.length())));
    }
    let (f1, f2) = (fingerprint(c1, exec)?, fingerprint(c2, exec)?);
    if f1 != f2 {
        return Ok(None);
    }
    transporter(c1, &code_canon(c1, exec)?, c2, &code_canon(c2, exec)?)
}

/// Class index of each code under monomial equivalence, classes numbered in
/// order of first appearance.
pub fn equivalence_classes<E: Executor>(codes: &[TernaryCode], exec: &E) -> Result<Vec<usize>> {
    let canons = codes.iter().map(|c| code_canon(c, exec)).collect::<Result<Vec<_>>>()?;
    classes_from_canons(codes, &canons)
}

/// As [`equivalence_classes`] with the canonical data already computed.
pub fn classes_from_canons(codes: &[TernaryCode], canons: &[CodeCanon]) -> Result<Vec<usize>> {
    let mut buckets: BTreeMap<(&CodeFingerprint, &[u32]), Vec<usize>> = BTreeMap::new();
    let mut class = alloc::vec![usize::MAX; codes.len()];
    let mut reps: Vec<usize> = Vec::new();
    for (i, c) in canons.iter().enumerate() {
        let bucket = buckets.entry((&c.fingerprint, c.certificate.as_slice())).or_default();
        let mut found = None;
        for &r in bucket.iter() {
            let same = c.spans || transporter(&codes[reps[r]], &canons[reps[r]], &codes[i], c)?.is_some();
            if same {
                found = Some(r);
                break;
            }
        }
        let id = match found {
            Some(r) => r,
            None => {
                reps.push(i);
                bucket.push(reps.len() - 1);
                reps.len() - 1
            }
        };
        class[i] = id;
    }
    Ok(class)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{golay12, tetracode};
    use crate::design::fano_plane;
    use crate::exec::Sequential;
    use alloc::vec;

    #[test]
    fn fano_group_order() {
        let c = canonical_design(&fano_plane());
        assert_eq!(c.aut_order, 168);
        assert_eq!(fano_plane().relabel(&c.point_perm, &c.block_perm), c.canonical_matrix);
    }

    #[test]
    fn relabeled_designs_agree() {
        let d = fano_plane();
        let p = Permutation::new(vec![4, 2, 6, 0, 1, 3, 5]).unwrap();
        let b = Permutation::new(vec![1, 0, 3, 2, 6, 5, 4]).unwrap();
        let e = d.relabel(&p, &b);
        assert_eq!(canonical_design(&d).canonical_matrix, canonical_design(&e).canonical_matrix);
        assert_eq!(canonical_design(&d).key(), canonical_design(&e).key());
    }

    #[test]
    fn tetracode_fingerprint() {
        let f = fingerprint(&tetracode(), &Sequential).unwrap();
        assert_eq!((f.n, f.k, f.d, f.a_d), (4, 2, 3, 8));
        assert_eq!(f.degrees, vec![3, 3, 3, 3]);
        assert_eq!(f.intersections.get(&2), Some(&6));
    }

    #[test]
    fn golay_planted_image() {
        let g = golay12();
        let m = Monomial::new(
            Permutation::new(vec![5, 3, 11, 0, 1, 7, 2, 9, 4, 10, 6, 8]).unwrap(),
            vec![Trit::ONE, Trit::TWO, Trit::TWO, Trit::ONE, Trit::ONE, Trit::TWO, Trit::ONE, Trit::ONE, Trit::TWO, Trit::ONE, Trit::TWO, Trit::ONE],
        )
        .unwrap();
        let h = g.image(&m);
        let t = monomially_equivalent(&g, &h, &Sequential).unwrap().expect("equivalent");
        assert!(t.maps_code(&g, &h));
        let canon = code_canon(&g, &Sequential).unwrap();
        // |Aut| of the extended ternary Golay code is 2 * |M12|
        assert_eq!(canon.aut_order, 190080);
    }

    #[test]
    fn words_above_the_minimum_complete_the_graph() {
        // tetracode + golay12: the weight-3 words span only the first block
        let (t, g) = (tetracode(), golay12());
        let (gt, gg) = (t.generator(), g.generator());
        let sum = TritMatrix::from_fn(8, 16, |r, c| match (r < 2, c < 4) {
            (true, true) => gt.get(r, c),
            (false, false) => gg.get(r - 2, c - 4),
            _ => Trit::ZERO,
        });
        let c = TernaryCode::from_generator(&sum);
        let canon = code_canon(&c, &Sequential).unwrap();
        assert!(canon.spans);
        assert_eq!(canon.fingerprint.d, 3);
        // 2 * 24 from the tetracode times 2 * |M12| from the Golay code
        assert_eq!(canon.aut_order, 48 * 190080);
        let perm: Vec<usize> = (0..16).map(|i| (i * 5 + 3) % 16).collect();
        let m = Monomial::new(Permutation::new(perm).unwrap(), (0..16).map(|i| if i % 3 == 0 { Trit::TWO } else { Trit::ONE }).collect()).unwrap();
        let h = c.image(&m);
        let t = monomially_equivalent(&c, &h, &Sequential).unwrap().expect("equivalent");
        assert!(t.maps_code(&c, &h));
    }
}
