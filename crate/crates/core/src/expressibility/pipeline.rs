use super::{
    base_two_clauses, lower, step1_expand, step2_isolate, step3_path4, step4_three_clauses, ExpressError,
    FaithfulExpression, PathFamily, Step1, Step2, TwoClauses,
};
use crate::relations::Relation;
use std::collections::HashMap;

/// Every intermediate result of expressing the 3-clauses from a non-tight
/// set.
#[derive(Clone, Debug)]
pub struct Pipeline {
    pub base: Vec<Relation>,
    /// The relation that is not componentwise bijunctive.
    pub source: Relation,
    pub two_clauses: TwoClauses,
    pub step1: Step1,
    pub step2: Step2,
    pub family: PathFamily,
    /// `D_0..D_3` over the path relations and 2-clauses.
    pub clauses: [FaithfulExpression; 4],
    gadgets: HashMap<String, FaithfulExpression>,
}

pub fn express_s3(rels: &[Relation]) -> Result<Pipeline, ExpressError> {
    let two_clauses = base_two_clauses(rels)?;
    let source = rels
        .iter()
        .find(|r| !r.componentwise_flags().bijunctive)
        .ok_or(ExpressError::NotNonTight)?
        .clone();
    let step1 = step1_expand(&source)?;
    let step2 = step2_isolate(&step1.q, &step1.a, &step1.b)?;
    let family = step3_path4(&step2)?;
    let clauses = step4_three_clauses(&family)?;
    let mut gadgets = two_clauses.as_map();
    for g in family.gadgets.values().chain(&clauses) {
        gadgets.insert(g.target.name().to_string(), g.clone());
    }
    Ok(Pipeline {
        base: rels.to_vec(),
        source,
        two_clauses,
        step1,
        step2,
        family,
        clauses,
        gadgets,
    })
}

impl Pipeline {
    /// Working-level gadgets by target name: `OR`, `NAND`, `IMP`, the
    /// path relations and `D0..D3`.
    pub fn gadgets(&self) -> &HashMap<String, FaithfulExpression> {
        &self.gadgets
    }

    /// A gadget rewritten over the base relations only.
    pub fn lowered(&self, name: &str) -> Result<FaithfulExpression, ExpressError> {
        let g = self
            .gadgets
            .get(name)
            .ok_or_else(|| ExpressError::MissingGadget(name.to_string()))?;
        lower(g, &self.gadgets, &self.base)
    }

    /// Base-level gadgets for `D0..D3`, ready for [`super::compose`].
    pub fn s3_gadgets(&self) -> Result<HashMap<String, FaithfulExpression>, ExpressError> {
        (0..4)
            .map(|i| {
                let name = format!("D{i}");
                self.lowered(&name).map(|g| (name, g))
            })
            .collect()
    }

    /// Names of the gadgets in construction order.
    pub fn names(&self) -> Vec<String> {
        let mut v: Vec<String> = ["OR", "NAND", "IMP"].iter().map(|s| s.to_string()).collect();
        v.extend(self.family.representatives().iter().map(|g| g.target.name().to_string()));
        v.extend((0..4).map(|i| format!("D{i}")));
        v
    }
}
