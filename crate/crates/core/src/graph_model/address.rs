//! Structured vertex and edge addresses.
//!
//! Every vertex of a denoted infinite graph has exactly one address. The
//! textual forms are fixed: `c:<id>` for core vertices, `g:<id>:<index>` for
//! ray and clique vertices, `g:<id>:<ray>:<index>` for star-of-rays vertices,
//! `f:<id>:<copy>:<local>` for family vertices and `s:<u>|<v>` for the
//! midpoint of a subdivided edge.

use std::fmt;

use crate::error::{Error, Result};

/// Position of a vertex inside one copy of a family pattern.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Local {
    /// Vertex `i` of a ray pattern, or `0` for a single-vertex pattern.
    Index(u64),
    /// Center of a star-of-rays pattern.
    Center,
    /// Vertex `index` of ray `ray` of a star-of-rays pattern, written `ray.index`.
    StarRay(u64, u64),
    /// A named vertex of a finite pattern graph.
    Named(String),
}

impl Local {
    pub fn parse(s: &str) -> Result<Local> {
        if s.is_empty() {
            return Err(Error::Schema("empty pattern-local name".into()));
        }
        if s == "c" {
            return Ok(Local::Center);
        }
        if let Some((a, b)) = s.split_once('.') {
            let j = a.parse().map_err(|_| Error::Schema(format!("bad local {s}")))?;
            let i = b.parse().map_err(|_| Error::Schema(format!("bad local {s}")))?;
            return Ok(Local::StarRay(j, i));
        }
        if s.bytes().all(|b| b.is_ascii_digit()) {
            return s
                .parse()
                .map(Local::Index)
                .map_err(|_| Error::Schema(format!("bad local {s}")));
        }
        check_identifier(s)?;
        Ok(Local::Named(s.to_string()))
    }
}

impl fmt::Display for Local {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Local::Index(i) => write!(f, "{i}"),
            Local::Center => write!(f, "c"),
            Local::StarRay(j, i) => write!(f, "{j}.{i}"),
            Local::Named(s) => write!(f, "{s}"),
        }
    }
}

/// Address of a vertex of a presented graph. The derived order is the
/// canonical vertex order used by every exporter.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexRef {
    Core(String),
    Gadget(String, u64),
    StarRay(String, u64, u64),
    Family(String, u64, Local),
    Subdiv(Box<VertexRef>, Box<VertexRef>),
}

impl VertexRef {
    pub fn core(id: &str) -> VertexRef {
        VertexRef::Core(id.to_string())
    }

    pub fn gadget(id: &str, index: u64) -> VertexRef {
        VertexRef::Gadget(id.to_string(), index)
    }

    pub fn star(id: &str, ray: u64, index: u64) -> VertexRef {
        VertexRef::StarRay(id.to_string(), ray, index)
    }

    pub fn family(id: &str, copy: u64, local: Local) -> VertexRef {
        VertexRef::Family(id.to_string(), copy, local)
    }

    /// Midpoint of the subdivided edge `{a, b}`, endpoints stored in canonical order.
    pub fn midpoint(a: VertexRef, b: VertexRef) -> VertexRef {
        if a <= b {
            VertexRef::Subdiv(Box::new(a), Box::new(b))
        } else {
            VertexRef::Subdiv(Box::new(b), Box::new(a))
        }
    }

    /// Parses the textual address form. A bare identifier is read as a core vertex.
    pub fn parse(s: &str) -> Result<VertexRef> {
        if let Some(rest) = s.strip_prefix("s:") {
            let (a, b) = rest
                .split_once('|')
                .ok_or_else(|| Error::Schema(format!("bad midpoint address {s}")))?;
            return Ok(VertexRef::midpoint(VertexRef::parse(a)?, VertexRef::parse(b)?));
        }
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| -> Result<u64> {
            t.parse()
                .map_err(|_| Error::Schema(format!("bad index {t:?} in address {s}")))
        };
        match parts.as_slice() {
            [id] => {
                check_identifier(id)?;
                Ok(VertexRef::core(id))
            }
            ["c", id] => {
                check_identifier(id)?;
                Ok(VertexRef::core(id))
            }
            ["g", id, i] => Ok(VertexRef::gadget(id, num(i)?)),
            ["g", id, j, i] => Ok(VertexRef::star(id, num(j)?, num(i)?)),
            ["f", id, k, local] => Ok(VertexRef::family(id, num(k)?, Local::parse(local)?)),
            _ => Err(Error::Schema(format!("unrecognised vertex address {s}"))),
        }
    }

    /// Identifier of the gadget or family owning this vertex, if any.
    pub fn owner(&self) -> Option<&str> {
        match self {
            VertexRef::Core(_) | VertexRef::Subdiv(..) => None,
            VertexRef::Gadget(g, _) | VertexRef::StarRay(g, _, _) | VertexRef::Family(g, _, _) => {
                Some(g)
            }
        }
    }
}

impl fmt::Display for VertexRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexRef::Core(id) => write!(f, "c:{id}"),
            VertexRef::Gadget(id, i) => write!(f, "g:{id}:{i}"),
            VertexRef::StarRay(id, j, i) => write!(f, "g:{id}:{j}:{i}"),
            VertexRef::Family(id, k, l) => write!(f, "f:{id}:{k}:{l}"),
            VertexRef::Subdiv(a, b) => write!(f, "s:{a}|{b}"),
        }
    }
}

/// An unordered pair of distinct vertices, stored in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeRef(pub VertexRef, pub VertexRef);

impl EdgeRef {
    pub fn new(a: VertexRef, b: VertexRef) -> EdgeRef {
        if a <= b {
            EdgeRef(a, b)
        } else {
            EdgeRef(b, a)
        }
    }

    pub fn contains(&self, v: &VertexRef) -> bool {
        &self.0 == v || &self.1 == v
    }

    /// Parses `a -- b` (whitespace around `--` optional).
    pub fn parse(s: &str) -> Result<EdgeRef> {
        let (a, b) = s
            .split_once("--")
            .ok_or_else(|| Error::Schema(format!("bad edge {s}, expected `u -- v`")))?;
        let a = VertexRef::parse(a.trim())?;
        let b = VertexRef::parse(b.trim())?;
        if a == b {
            return Err(Error::LoopEdge(a.to_string()));
        }
        Ok(EdgeRef::new(a, b))
    }
}

impl fmt::Display for EdgeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -- {}", self.0, self.1)
    }
}

/// Identifies one ray of a presentation: a top-level ray gadget, a ray of a
/// star (top-level or inside a family copy), or a ray-pattern family copy.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RayId {
    Top(String),
    OfStar(StarId, u64),
    Copy(String, u64),
}

impl RayId {
    pub fn vertex(&self, i: u64) -> VertexRef {
        match self {
            RayId::Top(g) => VertexRef::gadget(g, i),
            RayId::OfStar(StarId::Top(g), j) => VertexRef::star(g, *j, i),
            RayId::OfStar(StarId::Copy(f, k), j) => VertexRef::family(f, *k, Local::StarRay(*j, i)),
            RayId::Copy(f, k) => VertexRef::family(f, *k, Local::Index(i)),
        }
    }

    /// Position of `v` on this ray.
    pub fn position(&self, v: &VertexRef) -> Option<u64> {
        match (self, v) {
            (RayId::Top(g), VertexRef::Gadget(h, i)) if g == h => Some(*i),
            (RayId::OfStar(StarId::Top(g), j), VertexRef::StarRay(h, jj, i)) if g == h && j == jj => {
                Some(*i)
            }
            (RayId::OfStar(StarId::Copy(f, k), j), VertexRef::Family(h, kk, Local::StarRay(jj, i)))
                if f == h && k == kk && j == jj =>
            {
                Some(*i)
            }
            (RayId::Copy(f, k), VertexRef::Family(h, kk, Local::Index(i))) if f == h && k == kk => {
                Some(*i)
            }
            _ => None,
        }
    }

    /// Atom name of the end seeded by this ray.
    pub fn atom_name(&self) -> String {
        match self {
            RayId::Top(g) => format!("g:{g}"),
            RayId::OfStar(StarId::Top(g), j) => format!("g:{g}:{j}"),
            RayId::OfStar(StarId::Copy(f, k), j) => format!("f:{f}:{k}:{j}"),
            RayId::Copy(f, k) => format!("f:{f}:{k}"),
        }
    }
}

/// Identifies one star of rays: a top-level gadget or the pattern of a family copy.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StarId {
    Top(String),
    Copy(String, u64),
}

impl StarId {
    pub fn ray(&self, j: u64) -> RayId {
        RayId::OfStar(self.clone(), j)
    }

    /// Prefix shared by the atom names of this star's rays.
    pub fn atom_prefix(&self) -> String {
        match self {
            StarId::Top(g) => format!("g:{g}"),
            StarId::Copy(f, k) => format!("f:{f}:{k}"),
        }
    }
}

/// Identifiers are non-empty ASCII strings without address punctuation.
pub fn check_identifier(s: &str) -> Result<()> {
    let ok = !s.is_empty()
        && s.is_ascii()
        && s
            .chars()
            .all(|c| !c.is_whitespace() && !":|@,;*~".contains(c) && !c.is_control());
    if ok {
        Ok(())
    } else {
        Err(Error::Schema(format!("invalid identifier {s:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_addresses() {
        for s in [
            "c:a",
            "g:r:3",
            "g:S:2:5",
            "f:F:0:0",
            "f:X:3:c",
            "f:X:3:1.4",
            "f:P:1:top",
            "s:c:a|g:r:0",
        ] {
            let v = VertexRef::parse(s).unwrap();
            assert_eq!(v.to_string(), s);
        }
        assert_eq!(VertexRef::parse("a").unwrap(), VertexRef::core("a"));
    }

    #[test]
    fn canonical_order_is_numeric_within_gadgets() {
        assert!(VertexRef::gadget("r", 2) < VertexRef::gadget("r", 10));
        assert!(VertexRef::core("z") < VertexRef::gadget("a", 0));
    }

    #[test]
    fn edge_is_unordered() {
        let e = EdgeRef::parse("g:r:1 -- c:h").unwrap();
        assert_eq!(e, EdgeRef::new(VertexRef::gadget("r", 1), VertexRef::core("h")));
        assert_eq!(e.to_string(), "c:h -- g:r:1");
        assert!(matches!(EdgeRef::parse("a--a"), Err(Error::LoopEdge(_))));
    }

    #[test]
    fn identifiers_reject_punctuation() {
        assert!(check_identifier("bridge_1").is_ok());
        assert!(check_identifier("a:b").is_err());
        assert!(check_identifier("").is_err());
    }
}
