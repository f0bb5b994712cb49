//! Classification pipeline: runs every implemented criterion across every
//! bipartition and aggregates a final label with its certificates.

use crate::criteria::{
    axis_aligned_certificate, ccnr_entangled, degree_criterion, separable_2xq, PptReport,
};
use crate::graph::{GraphError, GridGraph};
use crate::surgery::{gme_verdict, range_verdict, RangeVerdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Label {
    Separable,
    NptEntangled,
    BoundEntangled,
    Gme,
    PptUndecided,
}

impl Label {
    pub fn as_str(self) -> &'static str {
        match self {
            Label::Separable => "SEPARABLE",
            Label::NptEntangled => "NPT_ENTANGLED",
            Label::BoundEntangled => "BOUND_ENTANGLED",
            Label::Gme => "GME",
            Label::PptUndecided => "PPT_UNDECIDED",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CutReport {
    pub ppt: PptReport,
    pub separable_2xq: Option<bool>,
    pub axis_aligned: bool,
    pub ccnr_value: f64,
    pub ccnr_entangled: bool,
    pub range: RangeVerdict,
}

#[derive(Debug, Clone)]
pub struct ClassificationReport {
    pub label: Label,
    pub cuts: Vec<CutReport>,
    /// Present only for three or more parties.
    pub gme: Option<bool>,
    /// Human-readable provenance of the deciding criteria.
    pub certificates: Vec<String>,
}

pub fn classify(g: &GridGraph) -> Result<ClassificationReport, GraphError> {
    if g.is_empty() {
        return Err(GraphError::EmptyGraph);
    }
    let mut cuts = Vec::new();
    for cut in g.all_cuts() {
        let (ccnr_value, ccnr_fires) = ccnr_entangled(g, &cut)?;
        cuts.push(CutReport {
            ppt: degree_criterion(g, &cut)?,
            separable_2xq: separable_2xq(g, &cut)?,
            axis_aligned: axis_aligned_certificate(g, &cut)?,
            ccnr_value,
            ccnr_entangled: ccnr_fires,
            range: range_verdict(g, &cut)?,
        });
    }
    let gme = if g.n_parties() >= 3 {
        Some(gme_verdict(g)?.gme)
    } else {
        None
    };

    let mut certificates = Vec::new();
    let label = decide(g, &cuts, gme, &mut certificates);
    Ok(ClassificationReport { label, cuts, gme, certificates })
}

fn decide(
    g: &GridGraph,
    cuts: &[CutReport],
    gme: Option<bool>,
    certs: &mut Vec<String>,
) -> Label {
    // 1. any degree-criterion failure is a definitive entanglement witness
    for c in cuts {
        if !c.ppt.ppt {
            certs.push(format!(
                "degree criterion fails across {} at vertex {:?}",
                c.ppt.cut.label(),
                c.ppt.witness_vertex.as_ref().unwrap()
            ));
            return Label::NptEntangled;
        }
    }
    // 2. separability certificates. With two parties a single certified cut
    // decides; with more parties every cut must carry a certificate.
    if g.n_parties() == 2 {
        let c = &cuts[0];
        if c.separable_2xq == Some(true) {
            certs.push("PPT is sufficient for separability on a 2xq grid".into());
            return Label::Separable;
        }
        if c.axis_aligned {
            certs.push("all edges axis-aligned: explicit product decomposition".into());
            return Label::Separable;
        }
    } else if cuts.iter().all(|c| c.axis_aligned) {
        certs.push("all edges axis-aligned on every cut: explicit product decomposition".into());
        return Label::Separable;
    }
    // 3. genuine multiparticle entanglement
    if gme == Some(true) {
        certs.push("no product vectors in range across any bipartition".into());
        return Label::Gme;
    }
    // 4. PPT everywhere, so any remaining entanglement witness means bound
    let mut fired = false;
    for c in cuts {
        if c.ccnr_entangled {
            certs.push(format!(
                "realignment trace norm {:.6} > 1 across {}",
                c.ccnr_value,
                c.range.cut.label()
            ));
            fired = true;
        }
        if c.range.entangled {
            certs.push(format!(
                "range criterion: span bound {} < rank {} across {}",
                c.range.span_bound,
                c.range.root_rank,
                c.range.cut.label()
            ));
            fired = true;
        }
    }
    if fired {
        return Label::BoundEntangled;
    }
    certs.push("PPT on every cut; no implemented criterion decides further".into());
    Label::PptUndecided
}
