//! Serializable reports and their text rendering.

use std::fmt::Write as _;

use serde::Serialize;
use umbilic_core::deform::SplitReport;
use umbilic_core::strata::StratumLabel;
use umbilic_core::umbilic::{lpl_class_multiplicity, CausalType, UmbilicReport};
use umbilic_core::versality::EquivalencePanel;
use umbilic_core::{Mult, MultiplicityResult};

use crate::spec::describe;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicityRecord {
    /// A count, or `"inf"`.
    pub value: String,
    pub stabilized_at: Option<u32>,
}

impl From<MultiplicityResult> for MultiplicityRecord {
    fn from(m: MultiplicityResult) -> Self {
        let stabilized_at = (m.stabilized_at != u32::MAX).then_some(m.stabilized_at);
        MultiplicityRecord { value: m.value.to_string(), stabilized_at }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PanelRecord {
    pub mult_one: bool,
    pub morse: bool,
    pub d4: Option<bool>,
    pub versal: Option<bool>,
    pub transverse: Option<bool>,
    pub disagreements: Vec<&'static str>,
}

impl From<EquivalencePanel> for PanelRecord {
    fn from(p: EquivalencePanel) -> Self {
        PanelRecord {
            mult_one: p.mult_one,
            morse: p.morse,
            d4: p.d4,
            versal: p.versal,
            transverse: p.transverse,
            disagreements: p.disagreements(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisRecord {
    pub name: String,
    pub causal_type: String,
    pub m_u: MultiplicityRecord,
    pub m_omega: MultiplicityRecord,
    /// `m(omega) >= 3 m_u`, when both are finite.
    pub inequality: Option<bool>,
    pub discriminant_class: String,
    pub ld_class: Option<String>,
    /// Multiplicities allowed by the LPL class at a timelike umbilic.
    pub lpl_candidates: Vec<u64>,
    pub config: String,
    pub phi_roots: Vec<(String, String)>,
    /// Absent for germs that are not graphs.
    pub panel: Option<PanelRecord>,
}

impl AnalysisRecord {
    pub fn new(name: String, r: &UmbilicReport, panel: Option<EquivalencePanel>) -> Self {
        let inequality = match (r.m_u.value, r.m_omega.value) {
            (Mult::Finite(u), Mult::Finite(w)) => Some(w >= 3 * u),
            _ => None,
        };
        let lpl_candidates =
            if r.causal_type == CausalType::Timelike { lpl_class_multiplicity(&r.discriminant_class) } else { Vec::new() };
        AnalysisRecord {
            name,
            causal_type: r.causal_type.to_string(),
            m_u: r.m_u.into(),
            m_omega: r.m_omega.into(),
            inequality,
            discriminant_class: r.discriminant_class.to_string(),
            ld_class: r.ld_class.as_ref().map(|c| c.to_string()),
            lpl_candidates,
            config: r.config.kind.to_string(),
            phi_roots: r.config.phi_roots.iter().map(|(d, t)| (d.to_string(), t.name().to_string())).collect(),
            panel: panel.map(Into::into),
        }
    }

    pub fn text(&self) -> String {
        let mut s = String::new();
        let yn = |b: Option<bool>| match b {
            Some(true) => "yes",
            Some(false) => "no",
            None => "n/a",
        };
        let mult = |m: &MultiplicityRecord| match m.stabilized_at {
            Some(n) => format!("{} (certified at order {})", m.value, n),
            None => m.value.clone(),
        };
        writeln!(s, "{}", self.name).unwrap();
        writeln!(s, "  causal type: {}", self.causal_type).unwrap();
        writeln!(s, "  m_u: {}", mult(&self.m_u)).unwrap();
        writeln!(s, "  m(omega): {}", mult(&self.m_omega)).unwrap();
        writeln!(s, "  m(omega) >= 3 m_u: {}", yn(self.inequality)).unwrap();
        writeln!(s, "  discriminant: {}", self.discriminant_class).unwrap();
        if let Some(ld) = &self.ld_class {
            writeln!(s, "  ld: {}", ld).unwrap();
        }
        if !self.lpl_candidates.is_empty() {
            let c: Vec<String> = self.lpl_candidates.iter().map(|c| c.to_string()).collect();
            writeln!(s, "  lpl candidates: {}", c.join(", ")).unwrap();
        }
        write!(s, "  config: {}", self.config).unwrap();
        if !self.phi_roots.is_empty() {
            let r: Vec<String> = self.phi_roots.iter().map(|(d, t)| format!("{} {}", d, t)).collect();
            write!(s, " [{}]", r.join("; ")).unwrap();
        }
        s.push('\n');
        match &self.panel {
            Some(p) => {
                writeln!(
                    s,
                    "  panel: m_u=1 {}, morse {}, d4 {}, versal {}, transverse {}",
                    yn(Some(p.mult_one)),
                    yn(Some(p.morse)),
                    yn(p.d4),
                    yn(p.versal),
                    yn(p.transverse)
                )
                .unwrap();
                if p.disagreements.is_empty() {
                    writeln!(s, "  panel agrees").unwrap();
                } else {
                    writeln!(s, "  panel DISAGREES: {}", p.disagreements.join(", ")).unwrap();
                }
            }
            None => writeln!(s, "  panel: n/a (not a graph)").unwrap(),
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratumRecord {
    pub s: String,
    pub t: String,
    pub region_id: u32,
    pub on_curves: Vec<&'static str>,
    pub predicted_config: Option<String>,
    pub mult_one: bool,
}

impl StratumRecord {
    pub fn new(s: String, t: String, l: &StratumLabel) -> Self {
        StratumRecord {
            s,
            t,
            region_id: l.region_id,
            on_curves: l.on_curves.iter().map(|c| c.name()).collect(),
            predicted_config: l.predicted_config.map(|c| c.to_string()),
            mult_one: l.mult_one,
        }
    }

    pub fn text(&self) -> String {
        let curves = if self.on_curves.is_empty() { String::from("-") } else { self.on_curves.join(",") };
        format!(
            "{} {} region={} curves={} config={} m_u=1:{}",
            self.s,
            self.t,
            self.region_id,
            curves,
            self.predicted_config.as_deref().unwrap_or("?"),
            self.mult_one
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UmbilicRecord {
    pub u: f64,
    pub v: f64,
    pub cluster: u64,
    pub simple: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MemberRecord {
    pub index: usize,
    pub perturbation: String,
    pub radius: String,
    pub complex_count: u64,
    pub real_umbilics: Vec<UmbilicRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DeformRecord {
    pub name: String,
    pub m_u: u64,
    pub members: Vec<MemberRecord>,
    pub max_real_observed: usize,
    pub conserved: bool,
    pub all_simple: bool,
}

impl DeformRecord {
    pub fn new(name: String, r: &SplitReport) -> Self {
        let members = r
            .members
            .iter()
            .enumerate()
            .map(|(index, m)| MemberRecord {
                index,
                perturbation: describe(&m.perturbation),
                radius: m.radius.to_string(),
                complex_count: m.complex_count,
                real_umbilics: m
                    .real_umbilics
                    .iter()
                    .map(|u| UmbilicRecord { u: u.u, v: u.v, cluster: u.cluster, simple: u.simple })
                    .collect(),
            })
            .collect();
        DeformRecord {
            name,
            m_u: r.m_u,
            members,
            max_real_observed: r.max_real_observed,
            conserved: r.conserved,
            all_simple: r.all_simple,
        }
    }

    pub fn text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "{}: m_u = {}", self.name, self.m_u).unwrap();
        for m in &self.members {
            let pts: Vec<String> = m
                .real_umbilics
                .iter()
                .map(|u| format!("({:.6}, {:.6}){}", u.u, u.v, if u.simple { "" } else { "*" }))
                .collect();
            writeln!(
                s,
                "  #{} {} r={} complex={} real={} {}",
                m.index,
                m.perturbation,
                m.radius,
                m.complex_count,
                m.real_umbilics.len(),
                pts.join(" ")
            )
            .unwrap();
        }
        writeln!(
            s,
            "  conserved={} max_real_observed={} all_simple={}",
            self.conserved, self.max_real_observed, self.all_simple
        )
        .unwrap();
        s
    }
}
