//! A parsed and semantically validated model: the algebra plus whatever
//! geometric data the source declared (basis twist, metric, symplectic
//! structure, explicit bracket table).

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{specialize_element, AlgebraSpec, Element};
use crate::cochain::Cochain;
use crate::connection::{christoffel, Connection, GammaTable};
use crate::derivation::DerivationBasis;
use crate::error::{Error, Result};
use crate::metric::Metric;
use crate::report::Report;
use crate::scalar::Rat;
use crate::symplectic::{PoissonStructure, SymplecticStructure};
use crate::tensor::Tensor;

#[derive(Clone, Debug)]
pub struct Model {
    pub algebra: AlgebraSpec,
    pub basis: Option<DerivationBasis>,
    pub metric: Option<Metric>,
    pub symplectic: Option<SymplecticStructure>,
    pub poisson_table: Option<PoissonStructure>,
}

impl Model {
    pub fn from_source(text: &str) -> Result<Model> {
        crate::parse::parse_model(text)
    }

    pub fn from_file(path: &std::path::Path) -> Result<Model> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::structure(format!("cannot read {}: {e}", path.display()))
        })?;
        Model::from_source(&text)
    }

    pub fn require_basis(&self) -> Result<&DerivationBasis> {
        self.basis
            .as_ref()
            .ok_or_else(|| Error::structure("model declares no phiA basis twist"))
    }

    pub fn require_metric(&self) -> Result<&Metric> {
        self.metric
            .as_ref()
            .ok_or_else(|| Error::structure("model declares no metric"))
    }

    pub fn require_symplectic(&self) -> Result<&SymplecticStructure> {
        self.symplectic
            .as_ref()
            .ok_or_else(|| Error::structure("model declares no symplectic structure"))
    }

    /// The declared bracket source: symplectic when present, else the
    /// explicit table.
    pub fn poisson_structure(&self) -> Result<PoissonStructure> {
        if let Some(s) = &self.symplectic {
            return Ok(PoissonStructure::Symplectic(s.clone()));
        }
        if let Some(t) = &self.poisson_table {
            return Ok(t.clone());
        }
        Err(Error::structure(
            "model declares neither a symplectic structure nor a bracket table",
        ))
    }

    /// The Levi-Civita data from the declared metric and twist.
    pub fn levi_civita(&self) -> Result<(GammaTable, Connection)> {
        let basis = self.require_basis()?;
        let metric = self.require_metric()?;
        let gamma = christoffel(&self.algebra, basis, metric)?;
        let conn = Connection::from_gamma(&self.algebra, basis, gamma.clone())?;
        Ok((gamma, conn))
    }

    /// Substitute a rational constant for the formal parameter everywhere.
    pub fn specialize(&self, x: &Rat) -> Result<Model> {
        let algebra = self.algebra.specialize(x)?;
        let basis = match &self.basis {
            None => None,
            Some(b) => {
                let mut mat = b.phi_a.clone();
                for row in &mut mat {
                    for v in row.iter_mut() {
                        *v = v.specialize(x)?;
                    }
                }
                Some(DerivationBasis::new(mat)?)
            }
        };
        let metric = match &self.metric {
            None => None,
            Some(g) => {
                let comps: Vec<Vec<Element>> = g
                    .components()
                    .iter()
                    .map(|row| row.iter().map(|e| specialize_element(e, x)).collect())
                    .collect::<Result<_>>()?;
                Some(Metric::new(&algebra, comps)?)
            }
        };
        let symplectic = match &self.symplectic {
            None => None,
            Some(s) => {
                let t = s.omega().as_tensor();
                let comps: Vec<Element> = t
                    .components()
                    .iter()
                    .map(|e| specialize_element(e, x))
                    .collect::<Result<_>>()?;
                let tensor = Tensor::new(&algebra, 2, t.kind, comps, t.degree.clone())?;
                Some(SymplecticStructure::new(Cochain::new(&algebra, tensor)?)?)
            }
        };
        let poisson_table = match &self.poisson_table {
            None => None,
            Some(PoissonStructure::Table { bracket, .. }) => {
                let table: Vec<Vec<Element>> = bracket
                    .iter()
                    .map(|row| row.iter().map(|e| specialize_element(e, x)).collect())
                    .collect::<Result<_>>()?;
                Some(PoissonStructure::from_table(&algebra, table)?)
            }
            Some(PoissonStructure::Symplectic(_)) => None,
        };
        Ok(Model {
            algebra,
            basis,
            metric,
            symplectic,
            poisson_table,
        })
    }

    /// Run every validation suite the declared data supports, with check
    /// names namespaced per suite.
    pub fn validate(&self, seed: u64) -> Report {
        let mut report = Report::new();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        report.merge_prefixed(
            "cocycle",
            self.algebra.cocycle.validate(&self.algebra.group, &mut rng),
        );
        report.merge_prefixed("structure", self.algebra.check_structure());
        if let Some(basis) = &self.basis {
            report.merge_prefixed("basis", basis.validate(&self.algebra));
            if let Some(g) = &self.metric {
                report.merge_prefixed("metric", g.validate(&self.algebra, basis));
            }
            if let Some(s) = &self.symplectic {
                report.merge_prefixed("symplectic", s.validate(&self.algebra, basis));
            }
        } else {
            if self.metric.is_some() {
                report.fail("metric.basis-missing", "metric declared without phiA");
            }
            if self.symplectic.is_some() {
                report.fail("symplectic.basis-missing", "symplectic declared without phiA");
            }
        }
        report
    }
}
