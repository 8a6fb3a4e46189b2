//! Built-in diagrams: PD tables shipped under `fixtures/` and the
//! `NAME:ARGS` family syntax of the command line.
//!
//! | spec                | diagram                                   |
//! |---------------------|-------------------------------------------|
//! | `unknot`            | crossingless circle                       |
//! | `trefoil`           | `torus2:-3`                               |
//! | `torus2:N`          | two-strand torus diagram, N ≠ 0           |
//! | `hopf_chain:M`      | M Hopf links in a row                     |
//! | `braid:S:W`         | closure of the word W (`1,-2,1`) on S strands |
//! | `l6a2`, `l8a21`, `k10_153`, `k8_19` | table links and knots     |
//! | `torus_annulus:R,K` | annulus diagram, see [`torus_annulus`]    |
//! | `core`              | annulus core circle                       |

use crate::annulus::{torus_annulus, AnnulusDiagram};
use crate::diagram::{braid_closure, hopf_chain, parse_pd, torus2, LinkDiagram};
use crate::error::{Error, Result};

pub const L6A2_PD: &str = include_str!("../fixtures/l6a2.pd");
pub const L8A21_PD: &str = include_str!("../fixtures/l8a21.pd");
pub const K10_153_PD: &str = include_str!("../fixtures/k10_153.pd");

/// Two-component alternating link 6²₂.
pub fn l6a2() -> LinkDiagram {
    parse_pd(L6A2_PD).expect("fixture parses").with_label("l6a2")
}

/// Four-component alternating link 8⁴₁.
pub fn l8a21() -> LinkDiagram {
    parse_pd(L8A21_PD).expect("fixture parses").with_label("l8a21")
}

pub fn k10_153() -> LinkDiagram {
    parse_pd(K10_153_PD).expect("fixture parses").with_label("k10_153")
}

/// 8₁₉ as the closure of (σ₁σ₂)⁴.
pub fn k8_19() -> LinkDiagram {
    braid_closure(3, &[1, 2].repeat(4)).expect("valid braid").with_label("k8_19")
}

pub fn trefoil() -> LinkDiagram {
    torus2(-3).expect("n != 0")
}

/// A parsed family spec.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Link(LinkDiagram),
    Annulus(AnnulusDiagram),
}

impl Family {
    pub fn into_link(self) -> Result<LinkDiagram> {
        match self {
            Family::Link(d) => Ok(d),
            Family::Annulus(_) => Err(Error::InvalidParameter("annulus family given where a link is expected".into())),
        }
    }

    pub fn into_annulus(self) -> Result<AnnulusDiagram> {
        match self {
            Family::Annulus(a) => Ok(a),
            Family::Link(_) => Err(Error::InvalidParameter("expected an annulus family (torus_annulus:R,K or core)".into())),
        }
    }
}

fn need<'a>(name: &str, a: Option<&'a str>) -> Result<&'a str> {
    a.ok_or_else(|| Error::InvalidParameter(format!("family `{name}` needs arguments")))
}

fn int<T: std::str::FromStr>(s: &str, what: &str) -> Result<T> {
    s.trim().parse().map_err(|_| Error::InvalidParameter(format!("bad {what} `{s}`")))
}

pub fn family(spec: &str) -> Result<Family> {
    let (name, args) = match spec.split_once(':') {
        Some((n, a)) => (n, Some(a)),
        None => (spec, None),
    };
    let link = |d: LinkDiagram| Ok(Family::Link(d));
    match (name, args) {
        ("unknot", None) => link(LinkDiagram::unknot()),
        ("trefoil", None) => link(trefoil()),
        ("l6a2", None) => link(l6a2()),
        ("l8a21", None) => link(l8a21()),
        ("k10_153", None) => link(k10_153()),
        ("k8_19", None) => link(k8_19()),
        ("core", None) => Ok(Family::Annulus(AnnulusDiagram::core_circle())),
        ("torus2", a) => link(torus2(int(need(name, a)?, "torus2 argument")?)?),
        ("hopf_chain", a) => link(hopf_chain(int(need(name, a)?, "hopf_chain argument")?)?),
        ("braid", a) => {
            let (s, w) = need(name, a)?
                .split_once(':')
                .ok_or_else(|| Error::InvalidParameter("braid expects STRANDS:WORD".into()))?;
            let word = if w.trim().is_empty() {
                Vec::new()
            } else {
                w.split(',').map(|g| int(g, "braid generator")).collect::<Result<Vec<i32>>>()?
            };
            link(braid_closure(int(s, "strand count")?, &word)?)
        }
        ("torus_annulus", a) => {
            let (r, k) = need(name, a)?
                .split_once(',')
                .ok_or_else(|| Error::InvalidParameter("torus_annulus expects R,K".into()))?;
            Ok(Family::Annulus(torus_annulus(int(r, "twist count")?, int(k, "strand count")?)?))
        }
        _ => Err(Error::InvalidParameter(format!("unknown family `{spec}`"))),
    }
}

/// (r, k) of a `torus_annulus:R,K` spec.
pub fn torus_annulus_params(spec: &str) -> Option<(i64, i64)> {
    let (r, k) = spec.strip_prefix("torus_annulus:")?.split_once(',')?;
    Some((r.trim().parse().ok()?, k.trim().parse().ok()?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_parse() {
        assert_eq!(l6a2().n_crossings(), 6);
        assert_eq!(l6a2().components().len(), 2);
        assert_eq!(l8a21().components().len(), 4);
        assert_eq!(k10_153().components().len(), 1);
        assert_eq!(k8_19().n_crossings(), 8);
        assert!(l6a2().is_alternating() && l8a21().is_alternating());
    }

    #[test]
    fn family_specs() {
        assert_eq!(family("torus2:-3").unwrap(), Family::Link(trefoil()));
        assert_eq!(family("hopf_chain:2").unwrap().into_link().unwrap().n_crossings(), 4);
        let b = family("braid:3:1,-2,1").unwrap().into_link().unwrap();
        assert_eq!(b.n_crossings(), 3);
        assert_eq!(family("braid:2:").unwrap().into_link().unwrap().n_free_loops(), 2);
        assert!(family("torus_annulus:1,2").unwrap().into_annulus().is_ok());
        assert!(family("core").unwrap().into_link().is_err());
        for bad in ["torus2", "torus2:x", "torus2:0", "nope", "braid:3", "hopf_chain:0", "torus_annulus:1"] {
            assert!(family(bad).is_err(), "{bad}");
        }
        assert_eq!(torus_annulus_params("torus_annulus:-3,2"), Some((-3, 2)));
        assert_eq!(torus_annulus_params("core"), None);
    }
}
