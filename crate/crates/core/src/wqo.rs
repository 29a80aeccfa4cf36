//! Finite quasi-orders, Higman's subsequence order and labelled induced
//! subgraph embeddings.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// A finite quasi-order, stored as its full reflexive and transitive relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    elements: Vec<String>,
    index: HashMap<String, usize>,
    leq: Vec<Vec<bool>>,
}

#[derive(Serialize, Deserialize)]
struct PosetJson {
    elements: Vec<String>,
    #[serde(default)]
    covers: Vec<[String; 2]>,
}

impl Poset {
    /// Reflexive and transitive closure of the pairs `a <= b` in `covers`.
    pub fn new(elements: Vec<String>, covers: &[(usize, usize)]) -> Result<Poset> {
        let n = elements.len();
        let mut index = HashMap::new();
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.clone(), i).is_some() {
                return Err(Error::Poset(format!("duplicate element {e:?}")));
            }
        }
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in covers {
            if a >= n || b >= n {
                return Err(Error::Poset(format!("cover ({a}, {b}) outside the {n} elements")));
            }
            leq[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        Ok(Poset { elements, index, leq })
    }

    fn numbered(n: usize, covers: &[(usize, usize)]) -> Poset {
        Poset::new((0..n).map(|i| i.to_string()).collect(), covers).expect("covers are in range")
    }

    /// `n` pairwise incomparable elements named `0..n`.
    pub fn antichain(n: usize) -> Poset {
        Poset::numbered(n, &[])
    }

    /// `0 <= 1 <= ... <= n-1`.
    pub fn chain(n: usize) -> Poset {
        let covers: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        Poset::numbered(n, &covers)
    }

    /// The one-element order, which turns labelled embedding into plain
    /// induced-subgraph containment.
    pub fn trivial() -> Poset {
        Poset::antichain(1)
    }

    pub fn from_json(text: &str) -> Result<Poset> {
        let raw: PosetJson = serde_json::from_str(text)?;
        let pos: HashMap<&str, usize> = raw.elements.iter().enumerate().map(|(i, e)| (e.as_str(), i)).collect();
        let covers = raw
            .covers
            .iter()
            .map(|[a, b]| match (pos.get(a.as_str()), pos.get(b.as_str())) {
                (Some(&x), Some(&y)) => Ok((x, y)),
                _ => Err(Error::Poset(format!("cover {a:?} <= {b:?} names an unknown element"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Poset::new(raw.elements.clone(), &covers)
    }

    /// JSON with the full relation listed as covers.
    pub fn to_json(&self) -> String {
        let covers = self
            .pairs()
            .into_iter()
            .filter(|(a, b)| a != b)
            .map(|(a, b)| [self.elements[a].clone(), self.elements[b].clone()])
            .collect();
        serde_json::to_string(&PosetJson { elements: self.elements.clone(), covers }).expect("plain data")
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    /// All related pairs `(a, b)` with `a <= b`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| self.leq[a][b]).collect()
    }

    pub fn is_transitive(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| {
            self.leq[i][i] && (0..n).all(|j| !self.leq[i][j] || (0..n).all(|k| !self.leq[j][k] || self.leq[i][k]))
        })
    }
}

/// Cartesian product order. Element `(a, b)` has index `a * |P2| + b` and
/// name `"(a,b)"`.
pub fn product_poset(p1: &Poset, p2: &Poset) -> Poset {
    let m = p2.len();
    let mut elements = Vec::with_capacity(p1.len() * m);
    for a in &p1.elements {
        for b in &p2.elements {
            elements.push(format!("({a},{b})"));
        }
    }
    let mut covers = Vec::new();
    for (a, c) in p1.pairs() {
        for (b, d) in p2.pairs() {
            covers.push((a * m + b, c * m + d));
        }
    }
    Poset::new(elements, &covers).expect("product names are distinct")
}

/// A graph whose vertices carry elements of a poset (by index).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelledGraphW {
    pub graph: Graph,
    pub labels: BTreeMap<VertexId, usize>,
}

impl LabelledGraphW {
    pub fn new(graph: Graph, labels: BTreeMap<VertexId, usize>) -> Result<Self> {
        if labels.keys().ne(graph.vertices().iter()) {
            return Err(Error::Poset("labels must cover exactly the vertex set".into()));
        }
        Ok(LabelledGraphW { graph, labels })
    }

    /// Every vertex labelled with element 0.
    pub fn uniform(graph: Graph) -> Self {
        let labels = graph.vertices().iter().map(|&v| (v, 0)).collect();
        LabelledGraphW { graph, labels }
    }

    fn check(&self, p: &Poset) -> Result<()> {
        match self.labels.values().find(|&&l| l >= p.len()) {
            Some(l) => Err(Error::Poset(format!("label {l} outside the poset"))),
            None => Ok(()),
        }
    }
}

/// An injective, edge-exact map from `g` into `h` that never decreases a
/// label, if one exists. Vertices of `g` are placed in id order and the
/// first embedding in lexicographic order of images is returned.
pub fn labelled_embedding(g: &LabelledGraphW, h: &LabelledGraphW, p: &Poset) -> Result<Option<BTreeMap<VertexId, VertexId>>> {
    g.check(p)?;
    h.check(p)?;
    let gv = g.graph.vertices();
    let hv = h.graph.vertices();
    if gv.len() > hv.len() {
        return Ok(None);
    }
    let cands: Vec<Vec<usize>> = gv
        .iter()
        .map(|&v| {
            (0..hv.len())
                .filter(|&w| {
                    p.leq(g.labels[&v], h.labels[&hv[w]]) && g.graph.degree(v) <= h.graph.degree(hv[w])
                })
                .collect()
        })
        .collect();
    let mut image: Vec<usize> = Vec::with_capacity(gv.len());
    let mut used = vec![false; hv.len()];
    fn extend(
        g: &Graph,
        h: &Graph,
        cands: &[Vec<usize>],
        image: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        let i = image.len();
        if i == cands.len() {
            return true;
        }
        for &w in &cands[i] {
            if used[w] || (0..i).any(|a| g.adj_idx(a, i) != h.adj_idx(image[a], w)) {
                continue;
            }
            used[w] = true;
            image.push(w);
            if extend(g, h, cands, image, used) {
                return true;
            }
            image.pop();
            used[w] = false;
        }
        false
    }
    if extend(&g.graph, &h.graph, &cands, &mut image, &mut used) {
        Ok(Some(gv.iter().zip(&image).map(|(&v, &w)| (v, hv[w])).collect()))
    } else {
        Ok(None)
    }
}

/// True iff `g` is a labelled induced subgraph of `h` over `p`.
pub fn labelled_embeds(g: &LabelledGraphW, h: &LabelledGraphW, p: &Poset) -> Result<bool> {
    Ok(labelled_embedding(g, h, p)?.is_some())
}

/// True iff `a` maps to a subsequence `b_{i_1}, ..., b_{i_m}` of `b` with
/// `a_j <= b_{i_j}`. Greedily matching each `a_j` to the earliest possible
/// position is optimal.
pub fn higman_leq<A, B>(a: &[A], b: &[B], mut leq: impl FnMut(&A, &B) -> bool) -> bool {
    let mut rest = b.iter();
    a.iter().all(|x| rest.any(|y| leq(x, y)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::Pattern;

    #[test]
    fn closure_and_product() {
        let p = Poset::new(vec!["a".into(), "b".into(), "c".into()], &[(0, 1), (1, 2)]).unwrap();
        assert!(p.leq(0, 2) && !p.leq(2, 0) && p.is_transitive());
        let q = product_poset(&Poset::antichain(3), &Poset::chain(2));
        assert_eq!(q.len(), 6);
        assert!(q.is_transitive());
        // Comparable only within the same first coordinate.
        assert_eq!(q.pairs().len(), 3 * 3);
        assert!(q.leq(2, 3) && !q.leq(1, 2));
        assert_eq!(product_poset(&Poset::trivial(), &Poset::trivial()).len(), 1);
    }

    #[test]
    fn json_round_trip() {
        let p = Poset::from_json(r#"{"elements":["x","y","z"],"covers":[["x","y"],["y","z"]]}"#).unwrap();
        assert!(p.leq(p.index_of("x").unwrap(), p.index_of("z").unwrap()));
        assert_eq!(Poset::from_json(&p.to_json()).unwrap(), p);
        assert!(Poset::from_json(r#"{"elements":["x"],"covers":[["x","w"]]}"#).is_err());
    }

    #[test]
    fn higman_examples() {
        let eq = |a: &char, b: &char| a == b;
        assert!(higman_leq(&['x'], &['y', 'x'], eq));
        assert!(!higman_leq(&['x', 'y'], &['y', 'x'], eq));
        assert!(higman_leq::<char, char>(&[], &['y'], eq));
    }

    #[test]
    fn labels_block_embeddings() {
        let g = Pattern::path(3).graph;
        let p = Poset::chain(2);
        let low = LabelledGraphW::uniform(g.clone());
        let mut high = low.clone();
        high.labels.insert(VertexId(1), 1);
        assert!(labelled_embeds(&low, &low, &p).unwrap());
        assert!(labelled_embeds(&low, &high, &p).unwrap());
        assert!(!labelled_embeds(&high, &low, &p).unwrap());
        assert!(labelled_embeds(&low, &LabelledGraphW::uniform(Pattern::cycle(6).graph), &p).unwrap());
    }
}
