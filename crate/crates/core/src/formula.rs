//! Positive 3-literal formulas where every variable occurs in exactly three
//! clauses.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("formula has {clauses} clauses over {vars} variables; the counts must agree")]
    CountMismatch { vars: usize, clauses: usize },
    #[error("clause {clause} mentions variable {var}, but only {vars} exist")]
    VariableOutOfRange {
        clause: usize,
        var: usize,
        vars: usize,
    },
    #[error("clause {0} repeats a variable")]
    RepeatedLiteral(usize),
    #[error("variable {var} occurs {count} times, expected 3")]
    Occurrences { var: usize, count: usize },
    #[error("assignment has {got} values for {expected} variables")]
    AssignmentLength { expected: usize, got: usize },
}

/// A `(3,3)`-monotone formula: `n` variables, `n` clauses of three distinct
/// positive literals, every variable in exactly three clauses.
///
/// Variables are 0-based here and 1-based in the text format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawFormula", into = "RawFormula")]
pub struct Formula33 {
    vars: usize,
    clauses: Vec<[usize; 3]>,
}

#[derive(Serialize, Deserialize)]
struct RawFormula {
    variables: usize,
    clauses: Vec<[usize; 3]>,
}

impl TryFrom<RawFormula> for Formula33 {
    type Error = FormulaError;
    fn try_from(r: RawFormula) -> Result<Self, Self::Error> {
        Formula33::new(r.variables, r.clauses)
    }
}

impl From<Formula33> for RawFormula {
    fn from(f: Formula33) -> Self {
        RawFormula {
            variables: f.vars,
            clauses: f.clauses,
        }
    }
}

impl Formula33 {
    pub fn new(vars: usize, clauses: Vec<[usize; 3]>) -> Result<Self, FormulaError> {
        if clauses.len() != vars {
            return Err(FormulaError::CountMismatch {
                vars,
                clauses: clauses.len(),
            });
        }
        let mut count = vec![0usize; vars];
        for (i, c) in clauses.iter().enumerate() {
            for &x in c {
                if x >= vars {
                    return Err(FormulaError::VariableOutOfRange {
                        clause: i,
                        var: x,
                        vars,
                    });
                }
                count[x] += 1;
            }
            if c[0] == c[1] || c[1] == c[2] || c[0] == c[2] {
                return Err(FormulaError::RepeatedLiteral(i));
            }
        }
        if let Some((var, &count)) = count.iter().enumerate().find(|(_, &c)| c != 3) {
            return Err(FormulaError::Occurrences { var, count });
        }
        Ok(Formula33 { vars, clauses })
    }

    pub fn variables(&self) -> usize {
        self.vars
    }

    pub fn clauses(&self) -> &[[usize; 3]] {
        &self.clauses
    }

    /// `(clause, position)` of each occurrence of `var`, in clause order.
    pub fn occurrences(&self, var: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(3);
        for (j, c) in self.clauses.iter().enumerate() {
            for (p, &x) in c.iter().enumerate() {
                if x == var {
                    out.push((j, p));
                }
            }
        }
        out
    }

    /// Every clause has exactly one true literal.
    pub fn is_one_in_three(&self, assignment: &[bool]) -> Result<bool, FormulaError> {
        if assignment.len() != self.vars {
            return Err(FormulaError::AssignmentLength {
                expected: self.vars,
                got: assignment.len(),
            });
        }
        Ok(self
            .clauses
            .iter()
            .all(|c| c.iter().filter(|&&x| assignment[x]).count() == 1))
    }
}
