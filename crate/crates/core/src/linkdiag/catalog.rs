//! Built-in diagrams.
//!
//! The multi-crossing classical entries are closures of braids
//! (`fig8` = (s1 s2^-1)^2, `solomon` = s1^4, `whitehead` = s1 s2^-1 s1 s2^-2,
//! `unknot-kink` = s1 on two strands) with signs in this crate's convention.

use super::{Diagram, DiagramError};

pub struct CatalogEntry {
    pub name: &'static str,
    pub summary: &'static str,
    pub text: &'static str,
}

const UNKNOT: &str = "\
link unknot
components 1
kind classical
arc a 1
base 1 a
";

const UNKNOT_KINK: &str = "\
link unknot-kink
components 1
kind classical
arc a1 1
crossing c1 over=a1 b1=a1 b2=a1 sign=-
order 1 c1
base 1 a1
";

const HOPF_POS: &str = "\
link hopf+
components 2
kind classical
arc a 1
arc b 2
crossing c1 over=a b1=b b2=b sign=+
crossing c2 over=b b1=a b2=a sign=+
order 1 c2
order 2 c1
base 1 a
base 2 b
";

const HOPF_NEG: &str = "\
link hopf-
components 2
kind classical
arc a 1
arc b 2
crossing c1 over=a b1=b b2=b sign=-
crossing c2 over=b b1=a b2=a sign=-
order 1 c2
order 2 c1
base 1 a
base 2 b
";

const TREFOIL: &str = "\
link trefoil
components 1
kind classical
arc x1 1
arc x2 1
arc x3 1
crossing c1 over=x1 b1=x2 b2=x3 sign=-
crossing c2 over=x2 b1=x3 b2=x1 sign=-
crossing c3 over=x3 b1=x1 b2=x2 sign=-
order 1 c3 c1 c2
base 1 x1
";

const TREFOIL_MIRROR: &str = "\
link trefoil-mirror
components 1
kind classical
arc x1 1
arc x2 1
arc x3 1
crossing c1 over=x1 b1=x3 b2=x2 sign=+
crossing c2 over=x2 b1=x1 b2=x3 sign=+
crossing c3 over=x3 b1=x2 b2=x1 sign=+
order 1 c3 c1 c2
base 1 x1
";

const FIG8: &str = "\
link fig8
components 1
kind classical
arc a1 1
arc a2 1
arc a3 1
arc a4 1
crossing c1 over=a1 b1=a2 b2=a3 sign=-
crossing c2 over=a4 b1=a2 b2=a1 sign=+
crossing c3 over=a3 b1=a4 b2=a1 sign=-
crossing c4 over=a2 b1=a4 b2=a3 sign=+
order 1 c2 c1 c4 c3
base 1 a1
";

const SOLOMON: &str = "\
link solomon
components 2
kind classical
arc a1 1
arc a2 1
arc b1 2
arc b2 2
crossing c1 over=a1 b1=b1 b2=b2 sign=-
crossing c2 over=b2 b1=a1 b2=a2 sign=-
crossing c3 over=a2 b1=b2 b2=b1 sign=-
crossing c4 over=b1 b1=a2 b2=a1 sign=-
order 1 c2 c4
order 2 c1 c3
base 1 a1
base 2 b1
";

const WHITEHEAD: &str = "\
link whitehead
components 2
kind classical
arc a1 1
arc a2 1
arc a3 1
arc b1 2
arc b2 2
crossing c1 over=a1 b1=b1 b2=b2 sign=-
crossing c2 over=a3 b1=a2 b2=a1 sign=+
crossing c3 over=b2 b1=a3 b2=a1 sign=-
crossing c4 over=a2 b1=b1 b2=b2 sign=+
crossing c5 over=b1 b1=a3 b2=a2 sign=+
order 1 c2 c5 c3
order 2 c1 c4
base 1 a1
base 2 b1
";

// Gauss code O1 U2 U1 O2: the trefoil with one crossing made virtual.
const VTREFOIL: &str = "\
link vtrefoil
components 1
kind virtual
arc x1 1
arc x2 1
crossing c1 over=x1 b1=x2 b2=x1 sign=+
crossing c2 over=x1 b1=x1 b2=x2 sign=+
order 1 c1 c2
base 1 x1
";

pub const ENTRIES: &[CatalogEntry] = &[
    CatalogEntry { name: "unknot", summary: "crossingless circle", text: UNKNOT },
    CatalogEntry { name: "unknot-kink", summary: "unknot with one Reidemeister I kink", text: UNKNOT_KINK },
    CatalogEntry { name: "hopf+", summary: "Hopf link, both crossings +", text: HOPF_POS },
    CatalogEntry { name: "hopf-", summary: "Hopf link, both crossings -", text: HOPF_NEG },
    CatalogEntry { name: "trefoil", summary: "trefoil knot", text: TREFOIL },
    CatalogEntry { name: "trefoil-mirror", summary: "mirror image of the trefoil", text: TREFOIL_MIRROR },
    CatalogEntry { name: "fig8", summary: "figure-eight knot", text: FIG8 },
    CatalogEntry { name: "solomon", summary: "Solomon link, torus link T(2,4)", text: SOLOMON },
    CatalogEntry { name: "whitehead", summary: "Whitehead link", text: WHITEHEAD },
    CatalogEntry { name: "vtrefoil", summary: "virtual trefoil", text: VTREFOIL },
];

pub fn names() -> impl Iterator<Item = &'static str> {
    ENTRIES.iter().map(|e| e.name)
}

pub fn entry(name: &str) -> Option<&'static CatalogEntry> {
    ENTRIES.iter().find(|e| e.name == name)
}

pub fn get(name: &str) -> Option<Diagram> {
    entry(name).map(|e| Diagram::parse(e.text).expect("catalog entries are valid"))
}

/// All catalog diagrams, in catalog order.
pub fn all() -> Vec<Diagram> {
    ENTRIES
        .iter()
        .map(|e| Diagram::parse(e.text).expect("catalog entries are valid"))
        .collect()
}

pub fn lookup(name: &str) -> Result<Diagram, DiagramError> {
    entry(name)
        .ok_or_else(|| DiagramError::Validation(format!("no catalog entry named '{name}'")))
        .and_then(|e| Diagram::parse(e.text))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linkdiag::Sign;

    #[test]
    fn every_entry_validates_and_round_trips() {
        for e in ENTRIES {
            let d = Diagram::parse(e.text).unwrap_or_else(|err| panic!("{}: {err}", e.name));
            assert_eq!(d.name(), e.name);
            assert_eq!(Diagram::parse(&d.to_text()).unwrap(), d);
        }
    }

    #[test]
    fn arcs_per_component_match_underpasses() {
        for d in all() {
            for i in 1..=d.mu() {
                let unders = d.under_order(i).unwrap().len();
                assert_eq!(d.arcs_of(i).len(), unders.max(1), "{} component {i}", d.name());
            }
        }
    }

    #[test]
    fn trefoil_underpasses_share_a_sign() {
        let d = get("trefoil").unwrap();
        let u = d.underpass_signs(1).unwrap();
        assert_eq!(u.len(), 3);
        assert!(u.iter().all(|x| x.sign == Sign::Negative));
        let ids: Vec<&str> = u.iter().map(|x| d.crossings()[x.crossing].id.as_str()).collect();
        assert_eq!(ids, ["c3", "c1", "c2"]);
        let m = get("trefoil-mirror").unwrap();
        assert!(m.underpass_signs(1).unwrap().iter().all(|x| x.sign == Sign::Positive));
    }

    #[test]
    fn virtual_flag() {
        assert!(!get("vtrefoil").unwrap().is_classical());
        assert!(get("whitehead").unwrap().is_classical());
    }
}
