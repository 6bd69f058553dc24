use super::{ComponentwiseFlags, Relation, SchaeferFlags};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SchaeferClass {
    Bijunctive,
    Horn,
    DualHorn,
    Affine,
}

/// The three branches of tightness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TightClass {
    ComponentwiseBijunctive,
    OrFree,
    NandFree,
}

impl TightClass {
    pub const ALL: [TightClass; 3] = [
        TightClass::ComponentwiseBijunctive,
        TightClass::OrFree,
        TightClass::NandFree,
    ];

    pub fn id(self) -> &'static str {
        match self {
            TightClass::ComponentwiseBijunctive => "componentwise-bijunctive",
            TightClass::OrFree => "or-free",
            TightClass::NandFree => "nand-free",
        }
    }
}

impl fmt::Display for TightClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl fmt::Display for SchaeferClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SchaeferClass::Bijunctive => "bijunctive",
            SchaeferClass::Horn => "Horn",
            SchaeferClass::DualHorn => "dual Horn",
            SchaeferClass::Affine => "affine",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Complexity {
    P,
    InCoNp,
    NpComplete,
    CoNpComplete,
    PspaceComplete,
}

impl fmt::Display for Complexity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Complexity::P => "P",
            Complexity::InCoNp => "coNP",
            Complexity::NpComplete => "NP-complete",
            Complexity::CoNpComplete => "coNP-complete",
            Complexity::PspaceComplete => "PSPACE-complete",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiameterBound {
    Linear,
    Exponential,
}

impl fmt::Display for DiameterBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DiameterBound::Linear => "O(n)",
            DiameterBound::Exponential => "2^Ω(√n)",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PredictedComplexity {
    pub sat: Complexity,
    pub stconn: Complexity,
    pub conn: Complexity,
    pub diameter: DiameterBound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "branches")]
pub enum Verdict {
    /// Every Schaefer class shared by all relations.
    Schaefer(Vec<SchaeferClass>),
    /// Every tight branch shared by all relations.
    TightNonSchaefer(Vec<TightClass>),
    NonTight,
}

impl Verdict {
    pub fn is_tight(&self) -> bool {
        !matches!(self, Verdict::NonTight)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: Vec<String>| v.join(", ");
        match self {
            Verdict::Schaefer(c) => write!(
                f,
                "Schaefer ({})",
                join(c.iter().map(|c| c.to_string()).collect())
            ),
            Verdict::TightNonSchaefer(c) => write!(
                f,
                "tight, non-Schaefer ({})",
                join(c.iter().map(|c| c.to_string()).collect())
            ),
            Verdict::NonTight => f.write_str("non-tight"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationFlags {
    pub name: String,
    pub arity: usize,
    pub bijunctive: bool,
    pub horn: bool,
    pub dual_horn: bool,
    pub affine: bool,
    pub ihsb_minus: bool,
    pub ihsb_plus: bool,
    pub or_free: bool,
    pub nand_free: bool,
    pub componentwise_bijunctive: bool,
    pub componentwise_ihsb_minus: bool,
    pub componentwise_ihsb_plus: bool,
}

impl RelationFlags {
    pub fn of(rel: &Relation) -> Self {
        let SchaeferFlags {
            bijunctive,
            horn,
            dual_horn,
            affine,
            ihsb_minus,
            ihsb_plus,
        } = rel.schaefer_flags();
        let cw: ComponentwiseFlags = rel.componentwise_flags();
        let free = rel.or_nand_free();
        RelationFlags {
            name: rel.name().to_string(),
            arity: rel.arity(),
            bijunctive,
            horn,
            dual_horn,
            affine,
            ihsb_minus,
            ihsb_plus,
            or_free: free.or_free,
            nand_free: free.nand_free,
            componentwise_bijunctive: cw.bijunctive,
            componentwise_ihsb_minus: cw.ihsb_minus,
            componentwise_ihsb_plus: cw.ihsb_plus,
        }
    }

    pub fn schaefer(&self, class: SchaeferClass) -> bool {
        match class {
            SchaeferClass::Bijunctive => self.bijunctive,
            SchaeferClass::Horn => self.horn,
            SchaeferClass::DualHorn => self.dual_horn,
            SchaeferClass::Affine => self.affine,
        }
    }

    pub fn tight(&self, class: TightClass) -> bool {
        match class {
            TightClass::ComponentwiseBijunctive => self.componentwise_bijunctive,
            TightClass::OrFree => self.or_free,
            TightClass::NandFree => self.nand_free,
        }
    }
}

/// Polynomial connectivity methods.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConnMethod {
    Bijunctive,
    Affine,
    IhsbMinus,
    IhsbPlus,
}

impl ConnMethod {
    pub const ALL: [ConnMethod; 4] = [
        ConnMethod::Bijunctive,
        ConnMethod::Affine,
        ConnMethod::IhsbMinus,
        ConnMethod::IhsbPlus,
    ];

    pub fn id(self) -> &'static str {
        match self {
            ConnMethod::Bijunctive => "bijunctive",
            ConnMethod::Affine => "affine",
            ConnMethod::IhsbMinus => "ihsb-",
            ConnMethod::IhsbPlus => "ihsb+",
        }
    }
}

impl fmt::Display for ConnMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl std::str::FromStr for ConnMethod {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ConnMethod::ALL
            .into_iter()
            .find(|m| m.id() == s)
            .ok_or_else(|| format!("unknown connectivity method `{s}`"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub relations: Vec<RelationFlags>,
    pub verdict: Verdict,
    /// Tight branches shared by every relation (also filled for Schaefer sets).
    pub tight_branches: Vec<TightClass>,
    pub predicted: PredictedComplexity,
    /// Methods deciding connectivity in polynomial time for this set.
    pub conn_poly_methods: Vec<ConnMethod>,
}

impl ClassificationReport {
    /// Preferred tight branch for st-connectivity.
    pub fn tight_branch(&self) -> Option<TightClass> {
        self.tight_branches.first().copied()
    }

    /// One-line summary mirroring the complexity table.
    pub fn summary(&self) -> String {
        let kind = match &self.verdict {
            Verdict::Schaefer(_) => "Schaefer".to_string(),
            Verdict::TightNonSchaefer(_) => "tight, non-Schaefer".to_string(),
            Verdict::NonTight => "non-tight".to_string(),
        };
        let p = &self.predicted;
        format!(
            "{kind}; Sat {}; st-Conn {}; Conn {}; diameter {}",
            p.sat, p.stconn, p.conn, p.diameter
        )
    }
}

/// Classifies a non-empty relation set.
pub fn classify_set(rels: &[Relation]) -> ClassificationReport {
    assert!(!rels.is_empty(), "classify_set needs at least one relation");
    let flags: Vec<RelationFlags> = rels.iter().map(RelationFlags::of).collect();
    let all = |f: &dyn Fn(&RelationFlags) -> bool| flags.iter().all(f);

    let schaefer: Vec<SchaeferClass> = [
        SchaeferClass::Bijunctive,
        SchaeferClass::Horn,
        SchaeferClass::DualHorn,
        SchaeferClass::Affine,
    ]
    .into_iter()
    .filter(|&c| all(&|f| f.schaefer(c)))
    .collect();
    let tight: Vec<TightClass> = TightClass::ALL
        .into_iter()
        .filter(|&c| all(&|f| f.tight(c)))
        .collect();

    let verdict = if !schaefer.is_empty() {
        Verdict::Schaefer(schaefer)
    } else if !tight.is_empty() {
        Verdict::TightNonSchaefer(tight.clone())
    } else {
        Verdict::NonTight
    };

    let predicted = match verdict {
        Verdict::Schaefer(_) => PredictedComplexity {
            sat: Complexity::P,
            stconn: Complexity::P,
            conn: Complexity::InCoNp,
            diameter: DiameterBound::Linear,
        },
        Verdict::TightNonSchaefer(_) => PredictedComplexity {
            sat: Complexity::NpComplete,
            stconn: Complexity::P,
            conn: Complexity::CoNpComplete,
            diameter: DiameterBound::Linear,
        },
        Verdict::NonTight => PredictedComplexity {
            sat: Complexity::NpComplete,
            stconn: Complexity::PspaceComplete,
            conn: Complexity::PspaceComplete,
            diameter: DiameterBound::Exponential,
        },
    };

    let mut conn_poly_methods = Vec::new();
    if all(&|f| f.bijunctive) {
        conn_poly_methods.push(ConnMethod::Bijunctive);
    }
    if all(&|f| f.affine) {
        conn_poly_methods.push(ConnMethod::Affine);
    }
    if all(&|f| f.horn && f.componentwise_ihsb_minus) {
        conn_poly_methods.push(ConnMethod::IhsbMinus);
    }
    if all(&|f| f.dual_horn && f.componentwise_ihsb_plus) {
        conn_poly_methods.push(ConnMethod::IhsbPlus);
    }

    ClassificationReport {
        relations: flags,
        verdict,
        tight_branches: tight,
        predicted,
        conn_poly_methods,
    }
}

#[cfg(test)]
mod tests {
    use super::super::named::*;
    use super::*;

    #[test]
    fn one_in_three_is_tight_non_schaefer() {
        let r = classify_set(&[one_in_three()]);
        assert!(matches!(&r.verdict, Verdict::TightNonSchaefer(b) if b[0] == TightClass::ComponentwiseBijunctive));
        assert_eq!(r.predicted.sat, Complexity::NpComplete);
        assert_eq!(r.predicted.stconn, Complexity::P);
        assert_eq!(r.predicted.conn, Complexity::CoNpComplete);
        assert_eq!(r.predicted.diameter, DiameterBound::Linear);
    }

    #[test]
    fn nae_is_non_tight() {
        let r = classify_set(&[nae()]);
        assert_eq!(r.verdict, Verdict::NonTight);
        assert_eq!(
            r.summary(),
            "non-tight; Sat NP-complete; st-Conn PSPACE-complete; Conn PSPACE-complete; diameter 2^Ω(√n)"
        );
    }

    #[test]
    fn or_is_schaefer() {
        let r = classify_set(&[or()]);
        match r.verdict {
            Verdict::Schaefer(c) => {
                assert!(c.contains(&SchaeferClass::DualHorn));
                assert!(c.contains(&SchaeferClass::Bijunctive));
            }
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn mixed_set_loses_shared_branches() {
        // OR is dual Horn, NAND is Horn; both bijunctive.
        let r = classify_set(&[or(), nand()]);
        assert_eq!(r.verdict, Verdict::Schaefer(vec![SchaeferClass::Bijunctive]));
        assert_eq!(r.tight_branch(), Some(TightClass::ComponentwiseBijunctive));
        assert!(r.conn_poly_methods.contains(&ConnMethod::Bijunctive));
    }

}
