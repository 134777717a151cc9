use super::{parse_identity, DslCheck};
use crate::harness::Classification;

/// A catalog identity written in the language, with the hard-coded check it restates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuiltinIdentity {
    pub name: &'static str,
    pub source: &'static str,
    pub counterpart: &'static str,
    pub classification: Classification,
}

impl BuiltinIdentity {
    pub fn check(&self) -> DslCheck {
        let ast = parse_identity(self.source).expect("built-in identities parse");
        DslCheck::new(format!("dsl-{}", self.name), ast, self.classification)
    }
}

use Classification::{MustPass, UnderTest};

const BUILTIN: [BuiltinIdentity; 10] = [
    BuiltinIdentity {
        name: "recurrence",
        source: "LAH(n+2) == p*LAH(n+1) + q*LAH(n) + r*PSI",
        counterpart: "recurrence-equiv-hybrid",
        classification: MustPass,
    },
    BuiltinIdentity {
        name: "definition",
        source: "LAH(n) == LA(n) + I*LA(n+1) + EPS*LA(n+2) + H*LA(n+3)",
        counterpart: "recurrence-equiv-hybrid",
        classification: MustPass,
    },
    BuiltinIdentity {
        name: "hybrid-binet",
        source: "(1-p-q)*LAH(n) == r*PSI + HPART(n)",
        counterpart: "hybrid-binet",
        classification: MustPass,
    },
    BuiltinIdentity {
        name: "character",
        source: "(1-p-q)^2*conj(LAH(m))*LAH(m) == 2*r*(1-q-p*q)*((1-p-q)*LA(m) - r) \
                 - 2*r*(p^2+p+q)*((1-p-q)*LA(m+1) - r) \
                 + (1-p^2*q^2)*((1-p-q)*LA(m) - r)^2 \
                 + (1-2*p-(p^2+q)^2)*((1-p-q)*LA(m+1) - r)^2 \
                 - 2*q*(1+p*q+p^3)*((1-p-q)*LA(m+1) - r)*((1-p-q)*LA(m) - r) - r^2",
        counterpart: "character",
        classification: UnderTest,
    },
    BuiltinIdentity {
        name: "conj-product",
        source: "conj(LAH(m))*LAH(m) == LAH(m)*conj(LAH(m))",
        counterpart: "character-product",
        classification: MustPass,
    },
    BuiltinIdentity {
        name: "vajda-direct",
        source: "(1-p-q)^2*(LAH(n+u)*LAH(n+v) - LAH(n)*LAH(n+u+v)) == \
                 HPART(n+u)*HPART(n+v) - HPART(n)*HPART(n+u+v) + r*(PSI*KSHIFT(n,u) - KSHIFT(n+v,u)*PSI)",
        counterpart: "vajda-direct",
        classification: MustPass,
    },
    BuiltinIdentity {
        name: "catalan",
        source: "(1-p-q)^2*(LAH(n+u)*LAH(n-u) - LAH(n)^2) == \
                 HPART(n+u)*HPART(n-u) - HPART(n)^2 + r*(PSI*KSHIFT(n,u) - KSHIFT(n-u,u)*PSI)",
        counterpart: "catalan-direct",
        classification: MustPass,
    },
    BuiltinIdentity {
        name: "cassini",
        source: "(1-p-q)^2*(LAH(n+1)*LAH(n-1) - LAH(n)^2) == \
                 HPART(n+1)*HPART(n-1) - HPART(n)^2 + r*(PSI*KSHIFT(n,1) - KSHIFT(n-1,1)*PSI)",
        counterpart: "cassini-direct",
        classification: MustPass,
    },
    BuiltinIdentity {
        name: "docagne",
        source: "(1-p-q)^2*(LAH(n+1)*LAH(m) - LAH(n)*LAH(m+1)) == \
                 HPART(n+1)*HPART(m) - HPART(n)*HPART(m+1) + r*(PSI*KSHIFT(n,1) - KSHIFT(m,1)*PSI)",
        counterpart: "docagne-direct",
        classification: MustPass,
    },
    BuiltinIdentity {
        name: "column-vector",
        source: "LAH(m+3) == (1+p)*LAH(m+2) + (q-p)*LAH(m+1) - q*LAH(m)",
        counterpart: "column-vector",
        classification: MustPass,
    },
];

pub fn builtin_identities() -> &'static [BuiltinIdentity] {
    &BUILTIN
}
