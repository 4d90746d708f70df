//! Abstract simplicial complexes stored by their facets.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A vertex label. Joins tag labels with a factor index, written `f:v`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Int(u64),
    Tagged(u32, Box<Label>),
    Name(String),
}

impl Label {
    pub fn tagged(factor: u32, inner: Label) -> Self {
        Label::Tagged(factor, Box::new(inner))
    }

    /// Strips one level of tagging.
    pub fn untag(&self) -> Option<(u32, &Label)> {
        match self {
            Label::Tagged(f, l) => Some((*f, l)),
            _ => None,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Int(n) => write!(f, "{n}"),
            Label::Tagged(k, l) => write!(f, "{k}:{l}"),
            Label::Name(s) => f.write_str(s),
        }
    }
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::InvalidInput("empty label".into()));
        }
        if let Ok(n) = s.parse::<u64>() {
            return Ok(Label::Int(n));
        }
        if let Some((head, rest)) = s.split_once(':') {
            if let Ok(k) = head.parse::<u32>() {
                return Ok(Label::tagged(k, rest.parse()?));
            }
        }
        Ok(Label::Name(s.to_string()))
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Label::Int(n) => serializer.serialize_u64(*n),
            other => serializer.collect_str(other),
        }
    }
}

struct LabelVisitor;

impl Visitor<'_> for LabelVisitor {
    type Value = Label;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("a nonnegative integer or a label string")
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Label, E> {
        Ok(Label::Int(v))
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Label, E> {
        u64::try_from(v).map(Label::Int).map_err(|_| E::custom("negative label"))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Label, E> {
        v.parse().map_err(E::custom)
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Label, D::Error> {
        deserializer.deserialize_any(LabelVisitor)
    }
}

/// A face as sorted vertex indices.
pub type Face = Vec<usize>;

/// A simplicial complex on an explicit vertex set.
///
/// Vertices are kept sorted and facets form a sorted antichain of sorted
/// index lists, so structural equality is equality of complexes. The
/// complex `{∅}` has the single facet `[]`; vertices need not belong to
/// any face.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Complex {
    vertices: Vec<Label>,
    facets: Vec<Face>,
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    vertices: Vec<Label>,
    facets: Vec<Vec<Label>>,
}

impl Serialize for Complex {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ComplexJson { vertices: self.vertices.clone(), facets: self.facet_labels() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Complex {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = ComplexJson::deserialize(deserializer)?;
        Complex::closure_from_facets(raw.vertices, raw.facets).map_err(de::Error::custom)
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    if a.len() > b.len() {
        return false;
    }
    let mut it = b.iter();
    'outer: for x in a {
        for y in it.by_ref() {
            if y == x {
                continue 'outer;
            }
            if y > x {
                return false;
            }
        }
        return false;
    }
    true
}

/// Maximal elements of a family of sorted faces, sorted.
fn antichain(mut faces: Vec<Face>) -> Vec<Face> {
    faces.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    faces.dedup();
    let mut kept: Vec<Face> = Vec::new();
    // kept faces through each vertex, so a candidate is only compared with
    // faces through its least covered vertex
    let mut through: HashMap<usize, Vec<usize>> = HashMap::new();
    for f in faces {
        let covered = match f.iter().map(|v| through.get(v).map_or(&[][..], Vec::as_slice)).min_by_key(|l| l.len()) {
            Some(ids) => ids.iter().any(|&k| is_subset(&f, &kept[k])),
            None => !kept.is_empty(),
        };
        if !covered {
            for &v in &f {
                through.entry(v).or_default().push(kept.len());
            }
            kept.push(f);
        }
    }
    finish(kept)
}

fn finish(mut facets: Vec<Face>) -> Vec<Face> {
    if facets.is_empty() {
        facets.push(Vec::new());
    }
    facets.sort();
    facets
}

impl Complex {
    /// The complex generated by `facets` on the vertex set `vertices`.
    pub fn closure_from_facets(vertices: Vec<Label>, facets: Vec<Vec<Label>>) -> Result<Self> {
        let mut sorted = vertices;
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateLabel(w[0].to_string()));
        }
        let index: HashMap<&Label, usize> = sorted.iter().enumerate().map(|(i, l)| (l, i)).collect();
        let mut faces = Vec::with_capacity(facets.len());
        for f in facets {
            let mut face = Vec::with_capacity(f.len());
            for l in &f {
                let i = index.get(l).ok_or_else(|| Error::LabelOutsideVertexSet(l.to_string()))?;
                face.push(*i);
            }
            face.sort_unstable();
            face.dedup();
            faces.push(face);
        }
        Ok(Self::from_index_facets(sorted, faces))
    }

    /// `vertices` must be sorted and distinct; faces index into it.
    fn from_index_facets(vertices: Vec<Label>, facets: Vec<Face>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Self { vertices, facets: antichain(facets) }
    }

    /// Like `from_index_facets` for families already known to be antichains.
    fn from_antichain(vertices: Vec<Label>, facets: Vec<Face>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Self { vertices, facets: finish(facets) }
    }

    pub fn vertices(&self) -> &[Label] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// Facets as sorted vertex indices.
    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn facet_labels(&self) -> Vec<Vec<Label>> {
        self.facets.iter().map(|f| self.labels_of(f)).collect()
    }

    pub fn labels_of(&self, face: &[usize]) -> Vec<Label> {
        face.iter().map(|&i| self.vertices[i].clone()).collect()
    }

    pub fn index_of(&self, label: &Label) -> Option<usize> {
        self.vertices.binary_search(label).ok()
    }

    fn indices_of(&self, labels: &[Label]) -> Option<Face> {
        let mut face: Face = labels.iter().map(|l| self.index_of(l)).collect::<Option<_>>()?;
        face.sort_unstable();
        face.dedup();
        Some(face)
    }

    /// `max |facet| - 1`; `-1` for `{∅}`.
    pub fn dim(&self) -> isize {
        self.facets.iter().map(Vec::len).max().unwrap_or(0) as isize - 1
    }

    pub fn is_pure(&self) -> bool {
        self.facets.iter().map(Vec::len).all_equal()
    }

    pub fn is_face_idx(&self, face: &[usize]) -> bool {
        self.facets.iter().any(|f| is_subset(face, f))
    }

    pub fn is_face(&self, labels: &[Label]) -> bool {
        self.indices_of(labels).is_some_and(|f| self.is_face_idx(&f))
    }

    /// Every face, each once.
    pub fn all_faces(&self) -> HashSet<Face> {
        let mut out = HashSet::new();
        for f in &self.facets {
            for k in 0..=f.len() {
                for sub in f.iter().copied().combinations(k) {
                    out.insert(sub);
                }
            }
        }
        out
    }

    /// Number of faces of each dimension `-1, 0, 1, ...`.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut counts = vec![0; (self.dim() + 2) as usize];
        for f in self.all_faces() {
            counts[f.len()] += 1;
        }
        counts
    }

    /// `{σ ⊎ τ}` over facets, with labels tagged `1:` and `2:`.
    pub fn join(&self, other: &Complex) -> Complex {
        let vertices: Vec<Label> = self
            .vertices
            .iter()
            .map(|l| Label::tagged(1, l.clone()))
            .chain(other.vertices.iter().map(|l| Label::tagged(2, l.clone())))
            .collect();
        let shift = self.vertices.len();
        let facets = self
            .facets
            .iter()
            .cartesian_product(&other.facets)
            .map(|(s, t)| s.iter().copied().chain(t.iter().map(|&j| j + shift)).collect())
            .collect();
        Complex::from_antichain(vertices, facets)
    }

    /// Generated by the complements of the facets, on the same vertex set.
    pub fn complement_complex(&self) -> Complex {
        let n = self.vertices.len();
        let facets = self
            .facets
            .iter()
            .map(|f| (0..n).filter(|i| f.binary_search(i).is_err()).collect())
            .collect();
        Complex::from_index_facets(self.vertices.clone(), facets)
    }

    /// Inclusion-minimal non-faces as index lists, sorted by size then
    /// lexicographically. Candidates stop at size `dim + 2`.
    pub fn minimal_nonfaces_idx(&self) -> Vec<Face> {
        let faces = self.all_faces();
        let n = self.vertices.len();
        let mut out: Vec<Face> = (0..n).filter(|&v| !faces.contains(&vec![v])).map(|v| vec![v]).collect();
        let max_size = (self.dim() + 2) as usize;
        let mut by_size: Vec<Vec<&Face>> = vec![Vec::new(); max_size + 1];
        for f in &faces {
            if f.len() <= max_size {
                by_size[f.len()].push(f);
            }
        }
        for k in 2..=max_size {
            let mut level = Vec::new();
            for sigma in &by_size[k - 1] {
                let last = *sigma.last().expect("size at least one");
                for x in last + 1..n {
                    let mut cand = (*sigma).clone();
                    cand.push(x);
                    if faces.contains(&cand) {
                        continue;
                    }
                    let minimal = (0..k).all(|skip| {
                        let sub: Face = cand.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                        faces.contains(&sub)
                    });
                    if minimal {
                        level.push(cand);
                    }
                }
            }
            level.sort();
            out.extend(level);
        }
        out
    }

    pub fn minimal_nonfaces(&self) -> Vec<Vec<Label>> {
        self.minimal_nonfaces_idx().iter().map(|f| self.labels_of(f)).collect()
    }

    /// `{σ ⊎ τ : σ, τ faces, σ ∩ τ = ∅}` on two copies `1:v`, `2:v` of the
    /// vertex set.
    pub fn deleted_join(&self) -> Complex {
        let n = self.vertices.len();
        let vertices: Vec<Label> = (1..=2)
            .flat_map(|k| self.vertices.iter().map(move |l| Label::tagged(k, l.clone())))
            .collect();
        let mut facets = HashSet::new();
        for f1 in &self.facets {
            for f2 in &self.facets {
                let common: Vec<usize> = f1.iter().copied().filter(|v| f2.binary_search(v).is_ok()).collect();
                let only1: Vec<usize> = f1.iter().copied().filter(|v| f2.binary_search(v).is_err()).collect();
                let only2: Vec<usize> = f2.iter().copied().filter(|v| f1.binary_search(v).is_err()).collect();
                for mask in 0u64..(1u64 << common.len()) {
                    let mut face: Face = only1.clone();
                    face.extend(only2.iter().map(|v| v + n));
                    for (bit, &v) in common.iter().enumerate() {
                        face.push(if mask >> bit & 1 == 0 { v } else { v + n });
                    }
                    face.sort_unstable();
                    facets.insert(face);
                }
            }
        }
        Complex::from_index_facets(vertices, facets.into_iter().collect())
    }

    /// `dim` of [`Complex::deleted_join`] without building it: the largest
    /// `|F1 ∪ F2| - 1` over pairs of facets.
    pub fn deleted_join_dim(&self) -> isize {
        let cap = self.vertices.len().min(2 * self.facets.iter().map(Vec::len).max().unwrap_or(0));
        let mut best = 0;
        for (i, f1) in self.facets.iter().enumerate() {
            for f2 in &self.facets[i..] {
                let common = f1.iter().filter(|v| f2.binary_search(v).is_ok()).count();
                best = best.max(f1.len() + f2.len() - common);
                if best == cap {
                    return best as isize - 1;
                }
            }
        }
        best as isize - 1
    }

    /// Faces of dimension at most `k`.
    pub fn skeleton(&self, k: isize) -> Complex {
        let size = (k + 1).max(0) as usize;
        let mut facets = Vec::new();
        for f in &self.facets {
            if f.len() <= size {
                facets.push(f.clone());
            } else {
                facets.extend(f.iter().copied().combinations(size));
            }
        }
        Complex::from_index_facets(self.vertices.clone(), facets)
    }

    /// Every facet of `sub` (matched by label) is a face of `self`.
    pub fn is_subcomplex(&self, sub: &Complex) -> bool {
        sub.facet_labels().iter().all(|f| self.is_face(f))
    }

    /// Same complex with every label rewritten; the map must be injective.
    pub fn relabel(&self, f: impl Fn(&Label) -> Label) -> Result<Complex> {
        Complex::closure_from_facets(self.vertices.iter().map(&f).collect(), self.facet_labels().iter().map(|fc| fc.iter().map(&f).collect()).collect())
    }
}

fn int_labels(n: usize) -> Vec<Label> {
    (1..=n as u64).map(Label::Int).collect()
}

/// `n` isolated points `1..=n`.
pub fn points_complex(n: usize) -> Complex {
    Complex::from_index_facets(int_labels(n), (0..n).map(|i| vec![i]).collect())
}

/// The full simplex on `1..=n`.
pub fn full_simplex(n: usize) -> Complex {
    Complex::from_index_facets(int_labels(n), vec![(0..n).collect()])
}

/// All proper subsets of `1..=n`.
pub fn simplex_boundary(n: usize) -> Complex {
    Complex::from_index_facets(int_labels(n), (0..n).combinations(n.saturating_sub(1)).collect())
}

/// `L * L * ... * L` (`d` factors) with labels `f:v`, `f = 1..=d`.
pub fn power_join(l: &Complex, d: usize) -> Complex {
    let n = l.num_vertices();
    let vertices: Vec<Label> = (1..=d as u32)
        .flat_map(|f| l.vertices.iter().map(move |v| Label::tagged(f, v.clone())))
        .collect();
    let facets = (0..d)
        .map(|_| l.facets.iter())
        .multi_cartesian_product()
        .map(|choice| {
            choice.iter().enumerate().flat_map(|(f, face)| face.iter().map(move |&v| f * n + v)).collect()
        })
        .collect::<Vec<Face>>();
    Complex::from_antichain(vertices, facets)
}

/// Labels of the facets as sets, convenient for comparisons in tests.
pub fn facet_sets(k: &Complex) -> BTreeSet<BTreeSet<Label>> {
    k.facet_labels().into_iter().map(|f| f.into_iter().collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(xs: &[u64]) -> Vec<Label> {
        xs.iter().map(|&x| Label::Int(x)).collect()
    }

    fn cx(n: u64, facets: &[&[u64]]) -> Complex {
        Complex::closure_from_facets(ints(&(1..=n).collect::<Vec<_>>()), facets.iter().map(|f| ints(f)).collect()).unwrap()
    }

    fn k33() -> Complex {
        power_join(&points_complex(3), 2)
    }

    #[test]
    fn label_round_trip() {
        for s in ["7", "2:5", "1:2:3", "a", "x:y"] {
            assert_eq!(s.parse::<Label>().unwrap().to_string(), s);
        }
        assert_eq!("2:5".parse::<Label>().unwrap(), Label::tagged(2, Label::Int(5)));
        assert_eq!(serde_json::to_string(&ints(&[3])).unwrap(), "[3]");
    }

    #[test]
    fn closure_reduces_to_antichain() {
        let k = cx(2, &[&[1, 2], &[2]]);
        assert_eq!(k.facet_labels(), vec![ints(&[1, 2])]);
        let empty = cx(3, &[]);
        assert_eq!(empty.facets(), &[Vec::<usize>::new()]);
        assert_eq!(empty.dim(), -1);
        let tri = cx(3, &[&[1, 2], &[1, 3], &[2, 3]]);
        assert_eq!(tri, simplex_boundary(3));
        let bad = Complex::closure_from_facets(ints(&[1]), vec![ints(&[2])]);
        assert_eq!(bad, Err(Error::LabelOutsideVertexSet("2".into())));
    }

    #[test]
    fn joins() {
        let e = points_complex(1).join(&points_complex(1));
        assert_eq!(e.dim(), 1);
        assert_eq!(e.facets().len(), 1);
        let k = k33();
        assert_eq!((k.num_vertices(), k.facets().len(), k.dim()), (6, 9, 1));
        let j = points_complex(3).join(&points_complex(3));
        assert_eq!(j, k);
        let tri = simplex_boundary(3);
        let with_empty = tri.join(&cx(0, &[]));
        let back = with_empty.relabel(|l| l.untag().unwrap().1.clone()).unwrap();
        assert_eq!(back, tri);
    }

    #[test]
    fn complements() {
        assert_eq!(simplex_boundary(3).complement_complex(), points_complex(3));
        assert_eq!(full_simplex(4).complement_complex(), cx(4, &[]));
        let k = k33();
        assert_eq!(k.complement_complex().complement_complex(), k);
    }

    #[test]
    fn nonfaces() {
        assert_eq!(points_complex(3).minimal_nonfaces(), vec![ints(&[1, 2]), ints(&[1, 3]), ints(&[2, 3])]);
        assert!(full_simplex(5).minimal_nonfaces().is_empty());
        assert_eq!(k33().minimal_nonfaces().len(), 6);
        assert_eq!(simplex_boundary(4).minimal_nonfaces(), vec![ints(&[1, 2, 3, 4])]);
        assert_eq!(cx(2, &[]).minimal_nonfaces(), vec![ints(&[1]), ints(&[2])]);
    }

    #[test]
    fn deleted_joins() {
        let s0 = points_complex(1).deleted_join();
        assert_eq!((s0.dim(), s0.facets().len()), (0, 2));
        let d = full_simplex(4).deleted_join();
        assert_eq!(d.dim(), 3);
        assert_eq!(d.facets().len(), 16);
        assert_eq!(full_simplex(4).deleted_join_dim(), 3);
        for dd in 2..=3 {
            let k = power_join(&points_complex(dd + 1), dd);
            assert_eq!(k.deleted_join().dim(), 2 * dd as isize - 1);
            assert_eq!(k.deleted_join_dim(), 2 * dd as isize - 1);
        }
    }

    #[test]
    fn skeleta_and_subcomplexes() {
        let g = simplex_boundary(4).skeleton(1);
        assert_eq!(g.facets().len(), 6);
        assert_eq!(g.dim(), 1);
        assert_eq!(simplex_boundary(4).skeleton(5), simplex_boundary(4));
        let oct = cx(6, &[&[1, 3, 5], &[1, 3, 6], &[1, 4, 5], &[1, 4, 6], &[2, 3, 5], &[2, 3, 6], &[2, 4, 5], &[2, 4, 6]]);
        let edges: Vec<&[u64]> = vec![&[1, 4], &[1, 5], &[1, 6], &[2, 4], &[2, 5], &[2, 6], &[3, 5], &[3, 6]];
        let sub = cx(6, &edges);
        assert!(oct.is_subcomplex(&sub));
        assert!(!oct.is_subcomplex(&cx(6, &[&[1, 2]])));
    }

    #[test]
    fn power_joins() {
        let k = power_join(&points_complex(4), 3);
        assert_eq!((k.num_vertices(), k.facets().len()), (12, 64));
        assert_eq!(points_complex(1).facets(), &[vec![0]]);
    }

    #[test]
    fn f_vector_of_octahedron_skeleton() {
        assert_eq!(simplex_boundary(4).f_vector(), vec![1, 4, 6, 4]);
    }

    #[test]
    fn json_round_trip() {
        let k = k33();
        let text = serde_json::to_string(&k).unwrap();
        assert!(text.contains("\"1:1\""));
        let back: Complex = serde_json::from_str(&text).unwrap();
        assert_eq!(back, k);
    }
}
