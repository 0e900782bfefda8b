//! Presentation-expressible vertex sets `U` for U-ends and U-directions.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph_model::{Presentation, VertexRef};

/// A vertex set given by rules the presentation can evaluate.
///
/// Textual forms: `all`, `timid`, `all-but:<v>,<v>,...` and
/// `core=<ids>;gadgets=<ids>;families=<ids>;vertices=<addresses>` (any
/// subset of the four clauses, comma-separated lists).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum USpec {
    All,
    Timid,
    AllExcept(BTreeSet<VertexRef>),
    Sets {
        core: BTreeSet<String>,
        gadgets: BTreeSet<String>,
        families: BTreeSet<String>,
        vertices: BTreeSet<VertexRef>,
    },
}

impl USpec {
    pub fn parse(s: &str) -> Result<USpec> {
        let s = s.trim();
        match s {
            "all" => return Ok(USpec::All),
            "timid" => return Ok(USpec::Timid),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("all-but:") {
            let vs = rest
                .split(',')
                .filter(|x| !x.is_empty())
                .map(|x| VertexRef::parse(x.trim()))
                .collect::<Result<BTreeSet<_>>>()?;
            return Ok(USpec::AllExcept(vs));
        }
        let mut core = BTreeSet::new();
        let mut gadgets = BTreeSet::new();
        let mut families = BTreeSet::new();
        let mut vertices = BTreeSet::new();
        for clause in s.split(';').filter(|c| !c.trim().is_empty()) {
            let (key, list) = clause
                .split_once('=')
                .ok_or_else(|| Error::UnsupportedUSpec(format!("bad clause {clause:?}")))?;
            let items = list.split(',').map(str::trim).filter(|x| !x.is_empty());
            match key.trim() {
                "core" => core.extend(items.map(String::from)),
                "gadgets" => gadgets.extend(items.map(String::from)),
                "families" => families.extend(items.map(String::from)),
                "vertices" => {
                    for x in items {
                        vertices.insert(VertexRef::parse(x)?);
                    }
                }
                other => return Err(Error::UnsupportedUSpec(format!("unknown clause {other:?}"))),
            }
        }
        Ok(USpec::Sets {
            core,
            gadgets,
            families,
            vertices,
        })
    }

    /// Checks that every named id and vertex exists in `p`.
    pub fn validate(&self, p: &Presentation) -> Result<()> {
        match self {
            USpec::All | USpec::Timid => Ok(()),
            USpec::AllExcept(vs) => vs.iter().try_for_each(|v| {
                if p.resolves(v) {
                    Ok(())
                } else {
                    Err(Error::UnsupportedUSpec(format!("unknown vertex {v}")))
                }
            }),
            USpec::Sets {
                core,
                gadgets,
                families,
                vertices,
            } => {
                for c in core {
                    if !p.is_core(c) {
                        return Err(Error::UnsupportedUSpec(format!("unknown core vertex {c}")));
                    }
                }
                for g in gadgets {
                    if p.gadget(g).is_none() {
                        return Err(Error::UnsupportedUSpec(format!("unknown gadget {g}")));
                    }
                }
                for f in families {
                    if p.family(f).is_none() {
                        return Err(Error::UnsupportedUSpec(format!("unknown family {f}")));
                    }
                }
                for v in vertices {
                    if !p.resolves(v) {
                        return Err(Error::UnsupportedUSpec(format!("unknown vertex {v}")));
                    }
                }
                Ok(())
            }
        }
    }

    /// Vertices the spec names explicitly; skeletons must materialize them.
    pub fn named_vertices(&self) -> Vec<VertexRef> {
        match self {
            USpec::AllExcept(vs) => vs.iter().cloned().collect(),
            USpec::Sets { vertices, core, .. } => vertices
                .iter()
                .cloned()
                .chain(core.iter().map(|c| VertexRef::core(c)))
                .collect(),
            _ => Vec::new(),
        }
    }

    /// Membership for the rule-based forms. `Timid` needs the cut engine and
    /// returns `None` here.
    pub fn contains_static(&self, v: &VertexRef) -> Option<bool> {
        match self {
            USpec::All => Some(true),
            USpec::Timid => None,
            USpec::AllExcept(vs) => Some(!vs.contains(v)),
            USpec::Sets {
                core,
                gadgets,
                families,
                vertices,
            } => Some(
                vertices.contains(v)
                    || match v {
                        VertexRef::Core(c) => core.contains(c),
                        VertexRef::Gadget(g, _) | VertexRef::StarRay(g, _, _) => gadgets.contains(g),
                        VertexRef::Family(f, _, _) => families.contains(f),
                        VertexRef::Subdiv(..) => false,
                    },
            ),
        }
    }
}

impl fmt::Display for USpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |it: Vec<String>| it.join(",");
        match self {
            USpec::All => write!(f, "all"),
            USpec::Timid => write!(f, "timid"),
            USpec::AllExcept(vs) => {
                write!(f, "all-but:{}", join(vs.iter().map(|v| v.to_string()).collect()))
            }
            USpec::Sets {
                core,
                gadgets,
                families,
                vertices,
            } => write!(
                f,
                "core={};gadgets={};families={};vertices={}",
                join(core.iter().cloned().collect()),
                join(gadgets.iter().cloned().collect()),
                join(families.iter().cloned().collect()),
                join(vertices.iter().map(|v| v.to_string()).collect()),
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        for s in ["all", "timid", "all-but:c:c", "core=a,b;gadgets=S;families=;vertices=g:S:0:0"] {
            let u = USpec::parse(s).unwrap();
            assert_eq!(USpec::parse(&u.to_string()).unwrap(), u);
        }
    }

    #[test]
    fn sets_membership() {
        let u = USpec::parse("core=a;gadgets=r").unwrap();
        assert_eq!(u.contains_static(&VertexRef::core("a")), Some(true));
        assert_eq!(u.contains_static(&VertexRef::gadget("r", 7)), Some(true));
        assert_eq!(u.contains_static(&VertexRef::core("b")), Some(false));
    }

    #[test]
    fn unknown_clause_is_unsupported() {
        assert!(matches!(USpec::parse("edges=x"), Err(Error::UnsupportedUSpec(_))));
    }
}
