//! Fall colourings of `(P3+P1)`-free graphs.
//!
//! Each co-component is either `3P1`-free or a disjoint union of cliques.
//! Distinct co-components are complete to each other, so they use disjoint
//! colour sets and are solved independently.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::colouring::{is_fall_colouring, Colouring};
use crate::graph::Graph;
use crate::matching::perfect_matching;
use crate::oracles::{fall_spectrum, Budget, FallSpectrum, OracleError};
use crate::pattern::{is_free_of, olariu_kind, OlariuKind, PatternName};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FallError {
    #[error("graph is not (P3+P1)-free")]
    NotP3P1Free,
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// How one co-component was handled.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub vertices: Vec<usize>,
    pub kind: OlariuKind,
    /// Dominating vertices removed first (3P1-free case).
    pub dominating: usize,
    /// Non-adjacent pairs used as classes (3P1-free case).
    pub pairs: usize,
    /// Common clique order (clique-union case).
    pub clique_size: Option<usize>,
    /// Colours this co-component contributes, if it has a fall colouring.
    pub colours: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FallResult {
    /// Empty or a single value.
    pub spectrum: FallSpectrum,
    pub colouring: Option<Colouring>,
    pub per_component: Vec<ComponentReport>,
}

/// Fall spectrum of a `(P3+P1)`-free graph, with a witness when nonempty.
pub fn fall_p3p1_free(g: &Graph) -> Result<FallResult, FallError> {
    let h: PatternName = "P3+P1".parse().expect("valid pattern");
    if !is_free_of(g, &h.graph()) {
        return Err(FallError::NotP3P1Free);
    }
    let n = g.n();
    let mut colours = vec![0u32; n];
    let mut next = 0u32;
    let mut ok = n > 0;
    let mut reports = Vec::new();
    for part in g.co_components() {
        let sub = g.induced(&part);
        let kind = olariu_kind(&sub);
        let mut report = ComponentReport {
            vertices: part.clone(),
            kind,
            dominating: 0,
            pairs: 0,
            clique_size: None,
            colours: None,
        };
        let classes = match kind {
            OlariuKind::ThreeP1Free => three_p1_free_classes(&sub, &mut report),
            OlariuKind::CliqueUnion => clique_union_classes(&sub, &mut report),
            OlariuKind::Neither => return Err(FallError::NotP3P1Free),
        };
        match classes {
            Some(classes) if ok => {
                report.colours = Some(classes.len());
                for class in classes {
                    next += 1;
                    for v in class {
                        colours[part[v]] = next;
                    }
                }
            }
            Some(classes) => report.colours = Some(classes.len()),
            None => ok = false,
        }
        reports.push(report);
    }
    if !ok {
        return Ok(FallResult {
            spectrum: FallSpectrum::default(),
            colouring: None,
            per_component: reports,
        });
    }
    let c = Colouring::new(colours).expect("every vertex lies in one class");
    debug_assert!(is_fall_colouring(g, &c).unwrap_or(false));
    Ok(FallResult {
        spectrum: FallSpectrum {
            values: vec![c.k()],
            witnesses: vec![c.clone()],
        },
        colouring: Some(c),
        per_component: reports,
    })
}

/// Dominating vertices as singletons, then a perfect matching of the
/// complement of the rest as 2-classes.
fn three_p1_free_classes(g: &Graph, report: &mut ComponentReport) -> Option<Vec<Vec<usize>>> {
    let dom = g.dominating_vertices();
    report.dominating = dom.len();
    let (rest, kept) = g.remove_vertices(&dom);
    if rest.n() % 2 == 1 {
        return None;
    }
    let m = perfect_matching(&rest.complement())?;
    report.pairs = m.len();
    let mut classes: Vec<Vec<usize>> = dom.iter().map(|&v| vec![v]).collect();
    classes.extend(m.pairs.iter().map(|&(a, b)| vec![kept[a], kept[b]]));
    Some(classes)
}

/// Rainbow colouring of equal-size cliques: class `i` takes the `i`-th vertex
/// of every clique.
fn clique_union_classes(g: &Graph, report: &mut ComponentReport) -> Option<Vec<Vec<usize>>> {
    let comps = g.components();
    let p = comps.first().map_or(0, Vec::len);
    report.clique_size = Some(p);
    if comps.iter().any(|c| c.len() != p) {
        return None;
    }
    Some(
        (0..p)
            .map(|i| comps.iter().map(|c| c[i]).collect())
            .collect(),
    )
}

/// Which route produced a spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectrumSource {
    P3P1Free,
    Oracle,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FallUniqueness {
    pub fall_unique: bool,
    pub spectrum: FallSpectrum,
    pub source: SpectrumSource,
}

/// Spectrum and fall-uniqueness flag, using the polynomial route when the
/// graph is `(P3+P1)`-free and the oracle otherwise.
pub fn fall_uniqueness_report(g: &Graph, budget: &Budget) -> Result<FallUniqueness, FallError> {
    let (spectrum, source) = match fall_p3p1_free(g) {
        Ok(r) => (r.spectrum, SpectrumSource::P3P1Free),
        Err(FallError::NotP3P1Free) => (fall_spectrum(g, budget)?.value, SpectrumSource::Oracle),
        Err(e) => return Err(e),
    };
    Ok(FallUniqueness {
        fall_unique: spectrum.is_fall_unique(),
        spectrum,
        source,
    })
}
