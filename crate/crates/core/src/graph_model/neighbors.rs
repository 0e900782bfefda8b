//! Exact adjacency of the denoted infinite graph.
//!
//! The neighbourhood of a vertex is a finite list plus finitely many infinite
//! index-parametrised streams; [`neighbors`] interleaves them lazily.

use std::collections::HashSet;

use super::address::{Local, RayId, StarId, VertexRef};
use super::presentation::{GadgetKind, Host, Mode, Pattern, Presentation};
use crate::error::{Error, Result};

/// An infinite sequence of vertices indexed by `t = 0, 1, 2, ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stream {
    /// Vertex `t` of a ray.
    Ray(RayId),
    /// Fresh vertex `t` of a clique.
    Clique(String),
    /// First vertex of ray `t` of a star.
    StarStarts(StarId),
    /// Vertex `local` of family copy `t`.
    Copies(String, Local),
    /// Midpoints between a fixed vertex and the items of the inner stream.
    Midpoints(VertexRef, Box<Stream>),
}

impl Stream {
    pub fn item(&self, t: u64) -> VertexRef {
        match self {
            Stream::Ray(r) => r.vertex(t),
            Stream::Clique(g) => VertexRef::gadget(g, t),
            Stream::StarStarts(s) => s.ray(t).vertex(0),
            Stream::Copies(f, l) => VertexRef::family(f, t, l.clone()),
            Stream::Midpoints(v, inner) => VertexRef::midpoint(v.clone(), inner.item(t)),
        }
    }

    /// The stream index of `v`, if `v` occurs in the stream.
    pub fn index_of(&self, v: &VertexRef) -> Option<u64> {
        match (self, v) {
            (Stream::Ray(r), v) => r.position(v),
            (Stream::Clique(g), VertexRef::Gadget(h, i)) if g == h => Some(*i),
            (Stream::StarStarts(s), v) => match (s, v) {
                (StarId::Top(g), VertexRef::StarRay(h, j, 0)) if g == h => Some(*j),
                (StarId::Copy(f, k), VertexRef::Family(h, kk, Local::StarRay(j, 0)))
                    if f == h && k == kk =>
                {
                    Some(*j)
                }
                _ => None,
            },
            (Stream::Copies(f, l), VertexRef::Family(h, k, ll)) if f == h && l == ll => Some(*k),
            (Stream::Midpoints(c, inner), VertexRef::Subdiv(a, b)) => {
                if **a == *c {
                    inner.index_of(b)
                } else if **b == *c {
                    inner.index_of(a)
                } else {
                    None
                }
            }
            _ => None,
        }
    }
}

/// The neighbourhood of one vertex: finitely many listed neighbours plus streams.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Neighborhood {
    pub finite: Vec<VertexRef>,
    pub streams: Vec<Stream>,
}

impl Neighborhood {
    pub fn is_finite(&self) -> bool {
        self.streams.is_empty()
    }

    pub fn contains(&self, v: &VertexRef) -> bool {
        self.finite.contains(v) || self.streams.iter().any(|s| s.index_of(v).is_some())
    }
}

/// Neighbourhood of `v` in the denoted graph.
pub fn neighborhood(p: &Presentation, v: &VertexRef) -> Result<Neighborhood> {
    if !p.resolves(v) {
        return Err(Error::UnresolvedRef(v.to_string()));
    }
    if !p.subdivided {
        return Ok(base_neighborhood(p, v));
    }
    Ok(match v {
        VertexRef::Subdiv(a, b) => Neighborhood {
            finite: vec![(**a).clone(), (**b).clone()],
            streams: Vec::new(),
        },
        _ => {
            let base = base_neighborhood(p, v);
            Neighborhood {
                finite: base
                    .finite
                    .into_iter()
                    .map(|u| VertexRef::midpoint(v.clone(), u))
                    .collect(),
                streams: base
                    .streams
                    .into_iter()
                    .map(|s| Stream::Midpoints(v.clone(), Box::new(s)))
                    .collect(),
            }
        }
    })
}

/// Adjacency in the graph before subdivision.
pub fn base_adjacent(p: &Presentation, a: &VertexRef, b: &VertexRef) -> bool {
    a != b && base_neighborhood(p, a).contains(b)
}

/// Lazy neighbour enumeration: listed neighbours first, then the streams
/// interleaved round-robin, without repetitions.
pub fn neighbors(p: &Presentation, v: &VertexRef) -> Result<NeighborIter> {
    let nb = neighborhood(p, v)?;
    Ok(NeighborIter {
        me: v.clone(),
        finite: nb.finite.into_iter(),
        streams: nb.streams,
        t: 0,
        s: 0,
        seen: HashSet::new(),
    })
}

pub struct NeighborIter {
    me: VertexRef,
    finite: std::vec::IntoIter<VertexRef>,
    streams: Vec<Stream>,
    t: u64,
    s: usize,
    seen: HashSet<VertexRef>,
}

impl Iterator for NeighborIter {
    type Item = VertexRef;

    fn next(&mut self) -> Option<VertexRef> {
        for v in self.finite.by_ref() {
            if v != self.me && self.seen.insert(v.clone()) {
                return Some(v);
            }
        }
        if self.streams.is_empty() {
            return None;
        }
        loop {
            let v = self.streams[self.s].item(self.t);
            self.s += 1;
            if self.s == self.streams.len() {
                self.s = 0;
                self.t += 1;
            }
            if v != self.me && self.seen.insert(v.clone()) {
                return Some(v);
            }
        }
    }
}

fn base_neighborhood(p: &Presentation, v: &VertexRef) -> Neighborhood {
    let mut nb = Neighborhood::default();
    for (a, b) in &p.core_edges {
        if a == v {
            nb.finite.push(b.clone());
        } else if b == v {
            nb.finite.push(a.clone());
        }
    }
    for g in &p.gadgets {
        match g.kind {
            GadgetKind::Ray => {
                let ray = RayId::Top(g.id.clone());
                if let Some(i) = ray.position(v) {
                    if i > 0 {
                        nb.finite.push(ray.vertex(i - 1));
                    }
                    nb.finite.push(ray.vertex(i + 1));
                    for a in &g.attachments {
                        match (&a.host, a.mode) {
                            (Host::Vertex(h), Mode::FirstOnly) if i == 0 => nb.finite.push(h.clone()),
                            (Host::Vertex(h), Mode::All) => nb.finite.push(h.clone()),
                            (Host::Along(h), _) => nb.finite.push(VertexRef::gadget(h, i)),
                            _ => {}
                        }
                    }
                }
                for a in &g.attachments {
                    match (&a.host, a.mode) {
                        (Host::Vertex(h), Mode::FirstOnly) if h == v => nb.finite.push(ray.vertex(0)),
                        (Host::Vertex(h), Mode::All) if h == v => nb.streams.push(Stream::Ray(ray.clone())),
                        (Host::Along(h), _) => {
                            if let Some(i) = RayId::Top(h.clone()).position(v) {
                                nb.finite.push(ray.vertex(i));
                            }
                        }
                        _ => {}
                    }
                }
            }
            GadgetKind::OmegaClique => {
                let fresh = matches!(v, VertexRef::Gadget(h, _) if h == &g.id);
                let member = g.core_members.contains(v);
                if fresh || member {
                    nb.streams.push(Stream::Clique(g.id.clone()));
                    nb.finite.extend(g.core_members.iter().filter(|m| *m != v).cloned());
                }
                if let VertexRef::Gadget(h, i) = v {
                    if h == &g.id {
                        for a in &g.attachments {
                            match (&a.host, a.mode) {
                                (Host::Vertex(x), Mode::FirstOnly) if *i == 0 => nb.finite.push(x.clone()),
                                (Host::Vertex(x), Mode::All) => nb.finite.push(x.clone()),
                                _ => {}
                            }
                        }
                    }
                }
                for a in &g.attachments {
                    match (&a.host, a.mode) {
                        (Host::Vertex(x), Mode::FirstOnly) if x == v => {
                            nb.finite.push(VertexRef::gadget(&g.id, 0))
                        }
                        (Host::Vertex(x), Mode::All) if x == v => {
                            nb.streams.push(Stream::Clique(g.id.clone()))
                        }
                        _ => {}
                    }
                }
            }
            GadgetKind::StarOfRays => {
                let star = StarId::Top(g.id.clone());
                let center = g.center().expect("validated star");
                if center == v {
                    nb.streams.push(Stream::StarStarts(star.clone()));
                }
                if let VertexRef::StarRay(h, j, i) = v {
                    if h == &g.id {
                        star_ray_neighbors(&mut nb, &star, *j, *i, center, g.chained);
                    }
                }
            }
        }
    }
    for f in &p.families {
        if let VertexRef::Family(h, k, local) = v {
            if h == &f.id {
                let k = *k;
                match (&f.pattern, local) {
                    (Pattern::Ray, Local::Index(i)) => {
                        let ray = RayId::Copy(f.id.clone(), k);
                        if *i > 0 {
                            nb.finite.push(ray.vertex(i - 1));
                        }
                        nb.finite.push(ray.vertex(i + 1));
                    }
                    (Pattern::Star { .. }, Local::Center) => {
                        nb.streams.push(Stream::StarStarts(f.star(k)));
                    }
                    (Pattern::Star { chained }, Local::StarRay(j, i)) => {
                        let center = VertexRef::family(&f.id, k, Local::Center);
                        star_ray_neighbors(&mut nb, &f.star(k), *j, *i, &center, *chained);
                    }
                    (Pattern::Graph { edges, .. }, Local::Named(n)) => {
                        for (a, b) in edges {
                            if a == n {
                                nb.finite.push(VertexRef::family(&f.id, k, Local::Named(b.clone())));
                            } else if b == n {
                                nb.finite.push(VertexRef::family(&f.id, k, Local::Named(a.clone())));
                            }
                        }
                    }
                    _ => {}
                }
                for (l, target) in &f.per_copy {
                    if l == local {
                        match target {
                            Host::Vertex(t) => nb.finite.push(t.clone()),
                            Host::Along(g) => nb.finite.push(VertexRef::gadget(g, k)),
                        }
                    }
                }
                if let Some((a, b)) = &f.chain {
                    if a == local {
                        nb.finite.push(VertexRef::family(&f.id, k + 1, b.clone()));
                    }
                    if b == local && k > 0 {
                        nb.finite.push(VertexRef::family(&f.id, k - 1, a.clone()));
                    }
                }
            }
        }
        for (l, target) in &f.per_copy {
            match target {
                Host::Vertex(t) if t == v => nb.streams.push(Stream::Copies(f.id.clone(), l.clone())),
                Host::Along(g) => {
                    if let VertexRef::Gadget(h, i) = v {
                        if h == g {
                            nb.finite.push(VertexRef::family(&f.id, *i, l.clone()));
                        }
                    }
                }
                _ => {}
            }
        }
    }
    nb.finite.retain(|u| u != v);
    nb.finite.sort();
    nb.finite.dedup();
    nb.streams.dedup();
    nb
}

fn star_ray_neighbors(
    nb: &mut Neighborhood,
    star: &StarId,
    j: u64,
    i: u64,
    center: &VertexRef,
    chained: bool,
) {
    let ray = star.ray(j);
    if i > 0 {
        nb.finite.push(ray.vertex(i - 1));
    } else {
        nb.finite.push(center.clone());
        if chained {
            if j > 0 {
                nb.finite.push(star.ray(j - 1).vertex(0));
            }
            nb.finite.push(star.ray(j + 1).vertex(0));
        }
    }
    nb.finite.push(ray.vertex(i + 1));
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ray_on_core() -> Presentation {
        Presentation::parse(
            r#"{"name":"r","core":{"vertices":["h"]},
                "gadgets":[{"id":"r","kind":"Ray","attachments":[{"host":"h","mode":"FirstOnly"}]}]}"#,
        )
        .unwrap()
    }

    #[test]
    fn interior_ray_vertex_has_two_neighbors() {
        let p = ray_on_core();
        let got: Vec<_> = neighbors(&p, &VertexRef::gadget("r", 5)).unwrap().collect();
        assert_eq!(got, vec![VertexRef::gadget("r", 4), VertexRef::gadget("r", 6)]);
    }

    #[test]
    fn unresolved_vertex() {
        let p = ray_on_core();
        assert!(matches!(
            neighbors(&p, &VertexRef::core("zz")),
            Err(Error::UnresolvedRef(_))
        ));
    }

    #[test]
    fn clique_member_stream_skips_itself() {
        let p = Presentation::parse(
            r#"{"name":"k","core":{"vertices":["a"]},
                "gadgets":[{"id":"K","kind":"OmegaClique","core_members":["a"]}]}"#,
        )
        .unwrap();
        let got: Vec<_> = neighbors(&p, &VertexRef::gadget("K", 1)).unwrap().take(4).collect();
        assert_eq!(
            got,
            vec![
                VertexRef::core("a"),
                VertexRef::gadget("K", 0),
                VertexRef::gadget("K", 2),
                VertexRef::gadget("K", 3)
            ]
        );
    }
}
