//! The finite contraction skeleton of a presentation.
//!
//! A finite window of every gadget and family is materialized vertex by
//! vertex; everything beyond the window is contracted into one region node
//! per tail, clique rest, star rest or family rest. Concrete edges between
//! nodes become unit arcs. Infinite bundles of edges (All-mode attachments,
//! clique adjacency, star centers, per-copy edges of the rest of a family,
//! ladders between rays) become ω arcs, which no finite separator can cut.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::graph_model::truncation::base_truncation;
use crate::graph_model::{
    neighborhood, EdgeRef, GadgetKind, Host, Local, Mode, Pattern, Presentation, RayId, StarId,
    VertexRef,
};

/// Which size parameter of one gadget or family an override raises.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slot {
    /// Materialized prefix of a ray gadget or fresh vertices of a clique.
    Prefix,
    /// Materialized rays of a star or copies of a family.
    Window,
    /// Materialized rays of the star inside each family copy.
    Nested,
    /// Materialized prefix of every ray inside a star or family.
    RayPrefix,
}

/// How much of each gadget and family is expanded into individual vertices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Materialization {
    pub ray_prefix: u64,
    pub clique_prefix: u64,
    pub window: u64,
    pub nested_window: u64,
    pub overrides: BTreeMap<(String, Slot), u64>,
}

impl Materialization {
    /// Default for edge separators: rays start inside their tail region.
    pub fn edge() -> Materialization {
        Materialization {
            ray_prefix: 0,
            clique_prefix: 0,
            window: 4,
            nested_window: 2,
            overrides: BTreeMap::new(),
        }
    }

    /// Default for vertex separators: the first vertex of every ray is
    /// materialized so it can be removed.
    pub fn vertex() -> Materialization {
        Materialization {
            ray_prefix: 1,
            ..Materialization::edge()
        }
    }

    fn raise(&mut self, id: &str, slot: Slot, at_least: u64) {
        let e = self.overrides.entry((id.to_string(), slot)).or_insert(0);
        *e = (*e).max(at_least);
    }

    fn get(&self, id: &str, slot: Slot, base: u64) -> u64 {
        self.overrides
            .get(&(id.to_string(), slot))
            .copied()
            .unwrap_or(0)
            .max(base)
    }

    /// Raises the windows so that `v` and its successor along every indexed
    /// direction are materialized.
    pub fn cover(mut self, v: &VertexRef) -> Materialization {
        match v {
            VertexRef::Core(_) => {}
            VertexRef::Gadget(g, i) => self.raise(g, Slot::Prefix, i + 2),
            VertexRef::StarRay(g, j, i) => {
                self.raise(g, Slot::Window, j + 2);
                self.raise(g, Slot::RayPrefix, i + 2);
            }
            VertexRef::Family(f, k, l) => {
                self.raise(f, Slot::Window, k + 2);
                match l {
                    Local::Index(i) => self.raise(f, Slot::RayPrefix, i + 2),
                    Local::StarRay(j, i) => {
                        self.raise(f, Slot::Nested, j + 2);
                        self.raise(f, Slot::RayPrefix, i + 2);
                    }
                    _ => {}
                }
            }
            VertexRef::Subdiv(a, b) => {
                self = self.cover(a).cover(b);
            }
        }
        self
    }

    pub fn cover_all<'a>(self, vs: impl IntoIterator<Item = &'a VertexRef>) -> Materialization {
        vs.into_iter().fold(self, |m, v| m.cover(v))
    }
}

/// A contracted infinite part of the graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Region {
    /// Vertices `from, from+1, ...` of one ray.
    RayTail { ray: RayId, from: u64 },
    /// Fresh vertices `from, from+1, ...` of a clique.
    CliqueRest { clique: String, from: u64 },
    /// Rays `from, from+1, ...` of a star (with their center edges inside the bundle).
    StarRest { star: StarId, from: u64, chained: bool },
    /// Copies `from, from+1, ...` of a family.
    FamilyRest { family: String, from: u64, chained: bool },
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Region::RayTail { ray, from } => write!(f, "[tail {} from {from}]", ray.atom_name()),
            Region::CliqueRest { clique, from } => write!(f, "[clique g:{clique} from {from}]"),
            Region::StarRest { star, from, .. } => {
                write!(f, "[star {} rays from {from}]", star.atom_prefix())
            }
            Region::FamilyRest { family, from, .. } => {
                write!(f, "[family f:{family} copies from {from}]")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Node {
    Vertex(VertexRef),
    Region(Region),
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Vertex(v) => write!(f, "{v}"),
            Node::Region(r) => write!(f, "{r}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cap {
    Unit(EdgeRef),
    Omega,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkelArc {
    pub a: usize,
    pub b: usize,
    pub cap: Cap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AtomKind {
    /// Seeds an end: a ray tail, clique, chain or the rest of a ray family.
    Seed,
    /// A vertex of infinite degree, candidate for a rayless direction.
    Hub,
}

/// A named unit from which space points are assembled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Atom {
    pub name: String,
    pub node: usize,
    pub kind: AtomKind,
    /// Stands for all the unmaterialized members of an ω-family.
    pub rest: bool,
    /// The hub vertex, for hub atoms on vertex nodes.
    pub vertex: Option<VertexRef>,
}

/// An ω-indexed family of atoms: materialized members plus one rest atom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomFamily {
    pub key: String,
    pub members: Vec<usize>,
    pub rest: usize,
    /// Representative pairs whose equivalence decides the whole family.
    pub pairs: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Default)]
struct Plan {
    prefix: BTreeMap<String, u64>,
    star_window: BTreeMap<String, u64>,
    star_ray_prefix: BTreeMap<String, u64>,
    fam_window: BTreeMap<String, u64>,
    fam_nested: BTreeMap<String, u64>,
    fam_ray_prefix: BTreeMap<String, u64>,
}

enum Home {
    Vertex,
    Region(Region),
}

impl Plan {
    fn new(p: &Presentation, m: &Materialization) -> Plan {
        let mut plan = Plan::default();
        for g in &p.gadgets {
            let along_users = !p.along_users(&g.id).is_empty();
            match g.kind {
                GadgetKind::Ray => {
                    let mut v = m.get(&g.id, Slot::Prefix, m.ray_prefix);
                    if along_users {
                        v = v.max(m.window);
                    }
                    plan.prefix.insert(g.id.clone(), v);
                }
                GadgetKind::OmegaClique => {
                    let mut v = m.get(&g.id, Slot::Prefix, m.clique_prefix);
                    if along_users {
                        v = v.max(m.window);
                    }
                    if g.attachments.iter().any(|a| a.mode == Mode::FirstOnly) {
                        v = v.max(1);
                    }
                    plan.prefix.insert(g.id.clone(), v);
                }
                GadgetKind::StarOfRays => {
                    plan.star_window
                        .insert(g.id.clone(), m.get(&g.id, Slot::Window, m.window).max(2));
                    plan.star_ray_prefix
                        .insert(g.id.clone(), m.get(&g.id, Slot::RayPrefix, m.ray_prefix));
                }
            }
        }
        for f in &p.families {
            plan.fam_window
                .insert(f.id.clone(), m.get(&f.id, Slot::Window, m.window).max(2));
            plan.fam_nested
                .insert(f.id.clone(), m.get(&f.id, Slot::Nested, m.nested_window).max(2));
            plan.fam_ray_prefix
                .insert(f.id.clone(), m.get(&f.id, Slot::RayPrefix, m.ray_prefix));
        }
        // Ladders and along-families share their index window with the host.
        loop {
            let mut changed = false;
            for g in &p.gadgets {
                for a in &g.attachments {
                    if let Host::Along(h) = &a.host {
                        let w = plan.prefix[&g.id].max(plan.prefix[h]);
                        for id in [&g.id, h] {
                            if plan.prefix[id] != w {
                                plan.prefix.insert(id.clone(), w);
                                changed = true;
                            }
                        }
                    }
                }
            }
            for f in &p.families {
                if let Some(g) = f.along() {
                    let w = plan.fam_window[&f.id].max(plan.prefix[g]);
                    if plan.fam_window[&f.id] != w {
                        plan.fam_window.insert(f.id.clone(), w);
                        changed = true;
                    }
                    if plan.prefix[g] != w {
                        plan.prefix.insert(g.to_string(), w);
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        plan
    }

    fn depth(&self) -> u64 {
        [
            &self.prefix,
            &self.star_window,
            &self.star_ray_prefix,
            &self.fam_window,
            &self.fam_nested,
            &self.fam_ray_prefix,
        ]
        .iter()
        .flat_map(|m| m.values().copied())
        .max()
        .unwrap_or(0)
            + 2
    }

    fn home(&self, p: &Presentation, v: &VertexRef) -> Home {
        match v {
            VertexRef::Core(_) | VertexRef::Subdiv(..) => Home::Vertex,
            VertexRef::Gadget(g, i) => {
                let pre = self.prefix[g];
                if *i < pre {
                    Home::Vertex
                } else if p.gadget(g).map(|g| g.kind) == Some(GadgetKind::OmegaClique) {
                    Home::Region(Region::CliqueRest {
                        clique: g.clone(),
                        from: pre,
                    })
                } else {
                    Home::Region(Region::RayTail {
                        ray: RayId::Top(g.clone()),
                        from: pre,
                    })
                }
            }
            VertexRef::StarRay(g, j, i) => {
                let w = self.star_window[g];
                let rp = self.star_ray_prefix[g];
                let chained = p.gadget(g).is_some_and(|g| g.chained);
                star_home(StarId::Top(g.clone()), *j, *i, w, rp, chained)
            }
            VertexRef::Family(f, k, l) => {
                let fam = p.family(f).expect("resolved family");
                let w = self.fam_window[f];
                if *k >= w {
                    return Home::Region(Region::FamilyRest {
                        family: f.clone(),
                        from: w,
                        chained: fam.chain.is_some(),
                    });
                }
                let rp = self.fam_ray_prefix[f];
                match (l, &fam.pattern) {
                    (Local::Index(i), Pattern::Ray) if *i >= rp => Home::Region(Region::RayTail {
                        ray: RayId::Copy(f.clone(), *k),
                        from: rp,
                    }),
                    (Local::StarRay(j, i), Pattern::Star { chained }) => star_home(
                        fam.star(*k),
                        *j,
                        *i,
                        self.fam_nested[f],
                        rp,
                        *chained,
                    ),
                    _ => Home::Vertex,
                }
            }
        }
    }
}

fn star_home(star: StarId, j: u64, i: u64, w: u64, rp: u64, chained: bool) -> Home {
    if j >= w {
        Home::Region(Region::StarRest {
            star,
            from: w,
            chained,
        })
    } else if i >= rp {
        Home::Region(Region::RayTail {
            ray: star.ray(j),
            from: rp,
        })
    } else {
        Home::Vertex
    }
}

/// The finite capacity graph on which cut and separation queries are answered.
#[derive(Debug, Clone)]
pub struct SkeletonGraph {
    pub materialization: Materialization,
    pub nodes: Vec<Node>,
    pub arcs: Vec<SkelArc>,
    pub atoms: Vec<Atom>,
    pub families: Vec<AtomFamily>,
    plan: Plan,
    subdivided: bool,
    vertex_index: BTreeMap<VertexRef, usize>,
    region_index: BTreeMap<Region, usize>,
    atom_index: BTreeMap<String, usize>,
    adjacency: Vec<Vec<usize>>,
    /// For shatterable region nodes: the nodes whose removal shatters them.
    shatter_targets: BTreeMap<usize, Vec<usize>>,
}

struct Builder<'p> {
    p: &'p Presentation,
    plan: Plan,
    nodes: Vec<Node>,
    vertex_index: BTreeMap<VertexRef, usize>,
    region_index: BTreeMap<Region, usize>,
}

impl Builder<'_> {
    fn node_of(&self, v: &VertexRef) -> usize {
        match self.plan.home(self.p, v) {
            Home::Vertex => self.vertex_index[v],
            Home::Region(r) => self.region_index[&r],
        }
    }

    fn region(&self, r: Region) -> usize {
        self.region_index[&r]
    }

    fn host_node(&self, h: &Host) -> usize {
        match h {
            Host::Vertex(v) => self.node_of(v),
            Host::Along(g) => self.node_of(&VertexRef::gadget(g, self.plan.prefix[g])),
        }
    }
}

impl SkeletonGraph {
    /// Builds the skeleton of `p` at materialization `m`. The windows are first
    /// raised to cover every vertex named by the presentation itself.
    pub fn build(p: &Presentation, m: &Materialization) -> SkeletonGraph {
        let mut m = m.clone().cover_all(&p.referenced_vertices());
        for f in &p.families {
            for (l, _) in &f.per_copy {
                m = m.cover(&VertexRef::family(&f.id, 0, l.clone()));
            }
            if let Some((a, b)) = &f.chain {
                m = m.cover(&VertexRef::family(&f.id, 0, a.clone()));
                m = m.cover(&VertexRef::family(&f.id, 0, b.clone()));
            }
        }
        let plan = Plan::new(p, &m);
        let (vertices, regions) = Self::enumerate(p, &plan);
        let mut b = Builder {
            p,
            plan,
            nodes: Vec::new(),
            vertex_index: BTreeMap::new(),
            region_index: BTreeMap::new(),
        };
        for v in vertices {
            b.vertex_index.insert(v.clone(), b.nodes.len());
            b.nodes.push(Node::Vertex(v));
        }
        for r in regions {
            b.region_index.insert(r.clone(), b.nodes.len());
            b.nodes.push(Node::Region(r));
        }

        let omega = Self::omega_pairs(&b);
        let mut units: BTreeMap<EdgeRef, (usize, usize)> = BTreeMap::new();
        let (_, edges) = base_truncation(p, b.plan.depth());
        for (u, v) in edges {
            let (nu, nv) = (b.node_of(&u), b.node_of(&v));
            if nu == nv {
                continue;
            }
            let key = (nu.min(nv), nu.max(nv));
            let touches_region =
                matches!(b.nodes[nu], Node::Region(_)) || matches!(b.nodes[nv], Node::Region(_));
            if touches_region && omega.contains(&key) {
                continue;
            }
            units.insert(EdgeRef::new(u, v), key);
        }

        let mut arcs = Vec::new();
        if p.subdivided {
            for (e, (x, y)) in units {
                let mid = VertexRef::midpoint(e.0.clone(), e.1.clone());
                let m_node = b.nodes.len();
                b.vertex_index.insert(mid.clone(), m_node);
                b.nodes.push(Node::Vertex(mid.clone()));
                let (nx, ny) = (b.node_of(&e.0), b.node_of(&e.1));
                debug_assert_eq!((nx.min(ny), nx.max(ny)), (x, y));
                arcs.push(SkelArc {
                    a: nx,
                    b: m_node,
                    cap: Cap::Unit(EdgeRef::new(e.0.clone(), mid.clone())),
                });
                arcs.push(SkelArc {
                    a: m_node,
                    b: ny,
                    cap: Cap::Unit(EdgeRef::new(mid, e.1.clone())),
                });
            }
            arcs.sort_by(|a, b| match (&a.cap, &b.cap) {
                (Cap::Unit(x), Cap::Unit(y)) => x.cmp(y),
                _ => std::cmp::Ordering::Equal,
            });
        } else {
            for (e, (x, y)) in units {
                arcs.push(SkelArc {
                    a: x,
                    b: y,
                    cap: Cap::Unit(e),
                });
            }
        }
        for (x, y) in &omega {
            arcs.push(SkelArc {
                a: *x,
                b: *y,
                cap: Cap::Omega,
            });
        }

        let mut adjacency = vec![Vec::new(); b.nodes.len()];
        for (i, a) in arcs.iter().enumerate() {
            adjacency[a.a].push(i);
            adjacency[a.b].push(i);
        }
        let shatter_targets = Self::collect_shatter_targets(&b);
        let mut sk = SkeletonGraph {
            materialization: m,
            nodes: b.nodes,
            arcs,
            atoms: Vec::new(),
            families: Vec::new(),
            plan: b.plan,
            subdivided: p.subdivided,
            vertex_index: b.vertex_index,
            region_index: b.region_index,
            atom_index: BTreeMap::new(),
            adjacency,
            shatter_targets,
        };
        sk.build_atoms(p);
        sk
    }

    fn enumerate(p: &Presentation, plan: &Plan) -> (BTreeSet<VertexRef>, Vec<Region>) {
        let mut vs: BTreeSet<VertexRef> = p.core.iter().map(|c| VertexRef::core(c)).collect();
        let mut rs = Vec::new();
        let star = |s: StarId,
                    w: u64,
                    rp: u64,
                    chained: bool,
                    vs: &mut BTreeSet<VertexRef>,
                    rs: &mut Vec<Region>| {
            for j in 0..w {
                let ray = s.ray(j);
                vs.extend((0..rp).map(|i| ray.vertex(i)));
                rs.push(Region::RayTail { ray, from: rp });
            }
            rs.push(Region::StarRest {
                star: s,
                from: w,
                chained,
            });
        };
        for g in &p.gadgets {
            match g.kind {
                GadgetKind::Ray => {
                    let pre = plan.prefix[&g.id];
                    vs.extend((0..pre).map(|i| VertexRef::gadget(&g.id, i)));
                    rs.push(Region::RayTail {
                        ray: RayId::Top(g.id.clone()),
                        from: pre,
                    });
                }
                GadgetKind::OmegaClique => {
                    let pre = plan.prefix[&g.id];
                    vs.extend((0..pre).map(|i| VertexRef::gadget(&g.id, i)));
                    rs.push(Region::CliqueRest {
                        clique: g.id.clone(),
                        from: pre,
                    });
                }
                GadgetKind::StarOfRays => star(
                    StarId::Top(g.id.clone()),
                    plan.star_window[&g.id],
                    plan.star_ray_prefix[&g.id],
                    g.chained,
                    &mut vs,
                    &mut rs,
                ),
            }
        }
        for f in &p.families {
            let w = plan.fam_window[&f.id];
            let rp = plan.fam_ray_prefix[&f.id];
            for k in 0..w {
                let at = |l: Local| VertexRef::family(&f.id, k, l);
                match &f.pattern {
                    Pattern::SingleVertex => {
                        vs.insert(at(Local::Index(0)));
                    }
                    Pattern::Graph { vertices, .. } => {
                        vs.extend(vertices.iter().map(|x| at(Local::Named(x.clone()))));
                    }
                    Pattern::Ray => {
                        vs.extend((0..rp).map(|i| at(Local::Index(i))));
                        rs.push(Region::RayTail {
                            ray: RayId::Copy(f.id.clone(), k),
                            from: rp,
                        });
                    }
                    Pattern::Star { chained } => {
                        vs.insert(at(Local::Center));
                        star(
                            f.star(k),
                            plan.fam_nested[&f.id],
                            rp,
                            *chained,
                            &mut vs,
                            &mut rs,
                        );
                    }
                }
            }
            rs.push(Region::FamilyRest {
                family: f.id.clone(),
                from: w,
                chained: f.chain.is_some(),
            });
        }
        (vs, rs)
    }

    fn omega_pairs(b: &Builder) -> BTreeSet<(usize, usize)> {
        let p = b.p;
        let mut out = BTreeSet::new();
        let mut add = |x: usize, y: usize| {
            if x != y {
                out.insert((x.min(y), x.max(y)));
            }
        };
        for g in &p.gadgets {
            let pre = b.plan.prefix.get(&g.id).copied().unwrap_or(0);
            match g.kind {
                GadgetKind::Ray => {
                    let tail = b.region(Region::RayTail {
                        ray: RayId::Top(g.id.clone()),
                        from: pre,
                    });
                    for a in &g.attachments {
                        match (&a.host, a.mode) {
                            (Host::Vertex(h), Mode::All) => add(b.node_of(h), tail),
                            (Host::Along(_), _) => add(tail, b.host_node(&a.host)),
                            _ => {}
                        }
                    }
                }
                GadgetKind::OmegaClique => {
                    let rest = b.region(Region::CliqueRest {
                        clique: g.id.clone(),
                        from: pre,
                    });
                    for m in &g.core_members {
                        add(b.node_of(m), rest);
                    }
                    for i in 0..pre {
                        add(b.node_of(&VertexRef::gadget(&g.id, i)), rest);
                    }
                    for a in &g.attachments {
                        if let (Host::Vertex(h), Mode::All) = (&a.host, a.mode) {
                            add(b.node_of(h), rest);
                        }
                    }
                }
                GadgetKind::StarOfRays => {
                    let rest = b.region(Region::StarRest {
                        star: StarId::Top(g.id.clone()),
                        from: b.plan.star_window[&g.id],
                        chained: g.chained,
                    });
                    add(b.node_of(g.center().expect("validated star")), rest);
                }
            }
        }
        for f in &p.families {
            let w = b.plan.fam_window[&f.id];
            let rest = b.region(Region::FamilyRest {
                family: f.id.clone(),
                from: w,
                chained: f.chain.is_some(),
            });
            for (_, h) in &f.per_copy {
                add(b.host_node(h), rest);
            }
            if let Pattern::Star { chained } = f.pattern {
                for k in 0..w {
                    let star_rest = b.region(Region::StarRest {
                        star: f.star(k),
                        from: b.plan.fam_nested[&f.id],
                        chained,
                    });
                    add(b.node_of(&VertexRef::family(&f.id, k, Local::Center)), star_rest);
                }
            }
        }
        out
    }

    fn collect_shatter_targets(b: &Builder) -> BTreeMap<usize, Vec<usize>> {
        let mut out = BTreeMap::new();
        for (i, n) in b.nodes.iter().enumerate() {
            match n {
                Node::Region(Region::StarRest {
                    star,
                    chained: false,
                    ..
                }) => {
                    let center = match star {
                        StarId::Top(g) => b.p.gadget(g).and_then(|g| g.center()).cloned(),
                        StarId::Copy(f, k) => Some(VertexRef::family(f, *k, Local::Center)),
                    };
                    out.insert(i, center.map(|c| vec![b.node_of(&c)]).unwrap_or_default());
                }
                Node::Region(Region::FamilyRest {
                    family,
                    chained: false,
                    ..
                }) => {
                    let f = b.p.family(family).expect("declared family");
                    let targets: Option<Vec<usize>> = f
                        .per_copy
                        .iter()
                        .map(|(_, h)| match h {
                            Host::Vertex(v) => Some(b.node_of(v)),
                            Host::Along(_) => None,
                        })
                        .collect();
                    if let Some(mut t) = targets {
                        t.sort();
                        t.dedup();
                        out.insert(i, t);
                    }
                }
                _ => {}
            }
        }
        out
    }

    fn push_atom(&mut self, name: String, node: usize, kind: AtomKind, rest: bool) -> usize {
        let vertex = match (&self.nodes[node], kind) {
            (Node::Vertex(v), AtomKind::Hub) => Some(v.clone()),
            _ => None,
        };
        let id = self.atoms.len();
        self.atom_index.insert(name.clone(), id);
        self.atoms.push(Atom {
            name,
            node,
            kind,
            rest,
            vertex,
        });
        id
    }

    fn build_atoms(&mut self, p: &Presentation) {
        let regions: Vec<(usize, Region)> = self
            .nodes
            .iter()
            .enumerate()
            .filter_map(|(i, n)| match n {
                Node::Region(r) => Some((i, r.clone())),
                _ => None,
            })
            .collect();
        // Seeds, in node order.
        for (i, r) in &regions {
            match r {
                Region::RayTail { ray, .. } => {
                    self.push_atom(ray.atom_name(), *i, AtomKind::Seed, false);
                }
                Region::CliqueRest { clique, .. } => {
                    self.push_atom(format!("g:{clique}"), *i, AtomKind::Seed, false);
                }
                Region::StarRest { star, chained, .. } => {
                    let pre = star.atom_prefix();
                    if *chained {
                        self.push_atom(format!("{pre}:~"), *i, AtomKind::Seed, false);
                    }
                    self.push_atom(format!("{pre}:*"), *i, AtomKind::Seed, true);
                }
                Region::FamilyRest {
                    family, chained, ..
                } => {
                    let f = p.family(family).expect("declared family");
                    if *chained {
                        self.push_atom(format!("f:{family}:~"), *i, AtomKind::Seed, false);
                    }
                    match &f.pattern {
                        Pattern::Ray => {
                            self.push_atom(format!("f:{family}:*"), *i, AtomKind::Seed, true);
                        }
                        Pattern::Star { chained } => {
                            self.push_atom(format!("f:{family}:*:*"), *i, AtomKind::Seed, true);
                            if *chained {
                                self.push_atom(format!("f:{family}:*:~"), *i, AtomKind::Seed, true);
                            }
                            self.push_atom(format!("f:{family}:*:c"), *i, AtomKind::Hub, true);
                        }
                        _ => {}
                    }
                }
            }
        }
        // Hubs: materialized base vertices of infinite degree.
        let hubs: Vec<(usize, VertexRef)> = self
            .vertex_index
            .iter()
            .filter(|(v, _)| !matches!(v, VertexRef::Subdiv(..)))
            .filter(|(v, _)| neighborhood(p, v).is_ok_and(|nb| !nb.is_finite()))
            .map(|(v, i)| (*i, v.clone()))
            .collect();
        for (i, v) in hubs {
            self.push_atom(v.to_string(), i, AtomKind::Hub, false);
        }
        self.build_families(p);
    }

    fn build_families(&mut self, p: &Presentation) {
        let mut fams = Vec::new();
        let members_of = |sk: &SkeletonGraph, names: Vec<String>| -> Vec<usize> {
            names.iter().filter_map(|n| sk.atom(n)).collect()
        };
        let pair01 = |m: &[usize]| vec![(m[0], m[1])];
        for g in &p.gadgets {
            if g.kind == GadgetKind::StarOfRays {
                let w = self.plan.star_window[&g.id];
                let members = members_of(self, (0..w).map(|j| format!("g:{}:{j}", g.id)).collect());
                let rest = self.atom(&format!("g:{}:*", g.id)).expect("star rest atom");
                fams.push(AtomFamily {
                    key: format!("g:{}", g.id),
                    pairs: pair01(&members),
                    members,
                    rest,
                });
            }
        }
        for f in &p.families {
            let w = self.plan.fam_window[&f.id];
            let id = &f.id;
            match &f.pattern {
                Pattern::Ray => {
                    let members = members_of(self, (0..w).map(|k| format!("f:{id}:{k}")).collect());
                    fams.push(AtomFamily {
                        key: format!("f:{id}"),
                        pairs: pair01(&members),
                        rest: self.atom(&format!("f:{id}:*")).expect("rest atom"),
                        members,
                    });
                }
                Pattern::Star { chained } => {
                    let nested = self.plan.fam_nested[id];
                    for k in 0..w {
                        let members =
                            members_of(self, (0..nested).map(|j| format!("f:{id}:{k}:{j}")).collect());
                        fams.push(AtomFamily {
                            key: format!("f:{id}:{k}"),
                            pairs: pair01(&members),
                            rest: self.atom(&format!("f:{id}:{k}:*")).expect("rest atom"),
                            members,
                        });
                    }
                    let a = |s: &SkeletonGraph, n: String| s.atom(&n).expect("materialized atom");
                    fams.push(AtomFamily {
                        key: format!("f:{id}:*"),
                        members: Vec::new(),
                        rest: a(self, format!("f:{id}:*:*")),
                        pairs: vec![
                            (a(self, format!("f:{id}:0:0")), a(self, format!("f:{id}:1:0"))),
                            (a(self, format!("f:{id}:0:0")), a(self, format!("f:{id}:0:1"))),
                        ],
                    });
                    if *chained {
                        let members =
                            members_of(self, (0..w).map(|k| format!("f:{id}:{k}:~")).collect());
                        fams.push(AtomFamily {
                            key: format!("f:{id}:~"),
                            pairs: pair01(&members),
                            rest: a(self, format!("f:{id}:*:~")),
                            members,
                        });
                    }
                    let members = members_of(self, (0..w).map(|k| format!("f:{id}:{k}:c")).collect());
                    fams.push(AtomFamily {
                        key: format!("f:{id}:c"),
                        pairs: pair01(&members),
                        rest: a(self, format!("f:{id}:*:c")),
                        members,
                    });
                }
                _ => {}
            }
        }
        self.families = fams;
    }

    pub fn atom(&self, name: &str) -> Option<usize> {
        self.atom_index.get(name).copied()
    }

    pub fn is_subdivided(&self) -> bool {
        self.subdivided
    }

    /// Number of unit arcs.
    pub fn budget(&self) -> u64 {
        self.arcs
            .iter()
            .filter(|a| matches!(a.cap, Cap::Unit(_)))
            .count() as u64
    }

    /// Indices of unit arcs in canonical edge order.
    pub fn unit_arcs(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.arcs.len())
            .filter(|&i| matches!(self.arcs[i].cap, Cap::Unit(_)))
            .collect();
        v.sort_by(|&a, &b| self.arcs[a].cap.cmp(&self.arcs[b].cap));
        v
    }

    pub fn unit_arc_of(&self, e: &EdgeRef) -> Option<usize> {
        self.arcs
            .iter()
            .position(|a| matches!(&a.cap, Cap::Unit(x) if x == e))
    }

    /// Materialized vertex nodes in canonical vertex order.
    pub fn vertex_nodes(&self) -> impl Iterator<Item = (&VertexRef, usize)> {
        self.vertex_index.iter().map(|(v, i)| (v, *i))
    }

    pub fn vertex_node(&self, v: &VertexRef) -> Option<usize> {
        self.vertex_index.get(v).copied()
    }

    pub fn region_node(&self, r: &Region) -> Option<usize> {
        self.region_index.get(r).copied()
    }

    /// The node whose contracted vertex set contains `v`.
    pub fn locate(&self, p: &Presentation, v: &VertexRef) -> Option<usize> {
        if let Some(i) = self.vertex_index.get(v) {
            return Some(*i);
        }
        if !p.resolves(v) {
            return None;
        }
        match v {
            VertexRef::Subdiv(a, b) => {
                let (na, nb) = (self.locate(p, a)?, self.locate(p, b)?);
                if matches!(self.nodes[na], Node::Region(_)) {
                    Some(na)
                } else {
                    Some(nb)
                }
            }
            _ => match self.plan.home(p, v) {
                Home::Vertex => None,
                Home::Region(r) => self.region_index.get(&r).copied(),
            },
        }
    }

    pub fn arcs_at(&self, node: usize) -> &[usize] {
        &self.adjacency[node]
    }

    pub fn other_end(&self, arc: usize, node: usize) -> usize {
        let a = &self.arcs[arc];
        if a.a == node {
            a.b
        } else {
            a.a
        }
    }

    /// Region nodes that break into infinitely many pieces when all their
    /// target nodes are removed (with no targets they are always in pieces).
    pub fn shatter_targets(&self) -> &BTreeMap<usize, Vec<usize>> {
        &self.shatter_targets
    }

    /// Per node: whether removing `removed_nodes` shatters it.
    pub fn shattered(&self, removed_nodes: &[bool]) -> Vec<bool> {
        let mut out = vec![false; self.nodes.len()];
        for (r, ts) in &self.shatter_targets {
            out[*r] = ts.iter().all(|t| removed_nodes[*t]);
        }
        out
    }

    /// Connected components after removing nodes and arcs. Returns a
    /// component id per node (`None` for removed nodes) and the count.
    pub fn components(&self, removed_nodes: &[bool], removed_arcs: &[bool]) -> (Vec<Option<usize>>, usize) {
        let n = self.nodes.len();
        let mut comp = vec![None; n];
        let mut count = 0;
        for s in 0..n {
            if removed_nodes[s] || comp[s].is_some() {
                continue;
            }
            comp[s] = Some(count);
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &a in &self.adjacency[u] {
                    if removed_arcs[a] {
                        continue;
                    }
                    let w = self.other_end(a, u);
                    if !removed_nodes[w] && comp[w].is_none() {
                        comp[w] = Some(count);
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    pub fn node_name(&self, i: usize) -> String {
        self.nodes[i].to_string()
    }

    /// DOT rendering: ω arcs bold, unit arcs labelled by their edge.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("graph \"{name}\" {{\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let shape = match n {
                Node::Vertex(_) => "ellipse",
                Node::Region(_) => "box",
            };
            s.push_str(&format!("  n{i} [label=\"{n}\", shape={shape}];\n"));
        }
        for a in &self.arcs {
            match &a.cap {
                Cap::Unit(e) => s.push_str(&format!("  n{} -- n{} [label=\"{e}\"];\n", a.a, a.b)),
                Cap::Omega => s.push_str(&format!("  n{} -- n{} [style=bold, label=\"ω\"];\n", a.a, a.b)),
            }
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "nodes": self.nodes.iter().map(|n| n.to_string()).collect::<Vec<_>>(),
            "arcs": self.arcs.iter().map(|a| serde_json::json!({
                "a": a.a,
                "b": a.b,
                "capacity": match &a.cap { Cap::Unit(_) => "1", Cap::Omega => "omega" },
                "edge": match &a.cap { Cap::Unit(e) => Some(e.to_string()), Cap::Omega => None },
            })).collect::<Vec<_>>(),
            "budget": self.budget(),
            "atoms": self.atoms.iter().map(|a| a.name.clone()).collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn single_ray_on_one_vertex() {
        let p = Presentation::parse(
            r#"{"name":"r","core":{"vertices":["h"]},
                "gadgets":[{"id":"r","kind":"Ray","attachments":[{"host":"h","mode":"FirstOnly"}]}]}"#,
        )
        .unwrap();
        let sk = SkeletonGraph::build(&p, &Materialization::edge());
        assert_eq!(sk.nodes.len(), 2);
        assert_eq!(sk.budget(), 1);
    }

    #[test]
    fn three_cliques_has_three_clique_terminals() {
        let sk = SkeletonGraph::build(&catalog::get("three_cliques").unwrap(), &Materialization::edge());
        let cliques = sk
            .nodes
            .iter()
            .filter(|n| matches!(n, Node::Region(Region::CliqueRest { .. })))
            .count();
        assert_eq!(cliques, 3);
        assert_eq!(sk.budget(), 1);
    }

    #[test]
    fn all_mode_hub_gets_omega_arcs() {
        let sk = SkeletonGraph::build(
            &catalog::get("double_ray_dominator").unwrap(),
            &Materialization::edge(),
        );
        let h = sk.vertex_node(&VertexRef::core("h")).unwrap();
        let omega = sk
            .arcs
            .iter()
            .filter(|a| a.cap == Cap::Omega && (a.a == h || a.b == h))
            .count();
        assert_eq!(omega, 2);
    }

    #[test]
    fn every_catalog_skeleton_locates_its_truncation() {
        for p in catalog::all() {
            let sk = SkeletonGraph::build(&p, &Materialization::vertex());
            let t = crate::graph_model::truncate(&p, 7);
            for v in t.graph.vertices() {
                assert!(sk.locate(&p, v).is_some(), "{} {v}", p.name);
            }
        }
    }
}
