use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Name of a tensor factor.
///
/// `Bbar` is the anti-Bob mode in Rindler region II; the starred variants are
/// the mirror copies introduced by the canonical purification.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    A,
    B,
    Bbar,
    C,
    Astar,
    Bstar,
    Bbarstar,
    Cstar,
    Custom(String),
}

impl Label {
    /// Mirror copy used by the canonical purification. An involution.
    pub fn mirror(&self) -> Label {
        match self {
            Label::A => Label::Astar,
            Label::B => Label::Bstar,
            Label::Bbar => Label::Bbarstar,
            Label::C => Label::Cstar,
            Label::Astar => Label::A,
            Label::Bstar => Label::B,
            Label::Bbarstar => Label::Bbar,
            Label::Cstar => Label::C,
            Label::Custom(s) => match s.strip_suffix('*') {
                Some(base) => Label::Custom(base.to_string()),
                None => Label::Custom(format!("{s}*")),
            },
        }
    }

    pub fn custom(name: impl Into<String>) -> Label {
        Label::Custom(name.into())
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Label::A => "A",
            Label::B => "B",
            Label::Bbar => "Bbar",
            Label::C => "C",
            Label::Astar => "A*",
            Label::Bstar => "B*",
            Label::Bbarstar => "Bbar*",
            Label::Cstar => "C*",
            Label::Custom(s) => s,
        };
        f.write_str(s)
    }
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Label> {
        Ok(match s {
            "A" => Label::A,
            "B" => Label::B,
            "Bbar" => Label::Bbar,
            "C" => Label::C,
            "A*" | "Astar" => Label::Astar,
            "B*" | "Bstar" => Label::Bstar,
            "Bbar*" | "Bbarstar" => Label::Bbarstar,
            "C*" | "Cstar" => Label::Cstar,
            "" => return Err(Error::arg("empty label")),
            other => Label::Custom(other.to_string()),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    pub label: Label,
    pub dim: usize,
}

/// Ordered list of labelled tensor factors. The first factor is the most
/// significant digit of the flattened basis index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QRegister {
    factors: Vec<Factor>,
}

impl QRegister {
    pub fn new<I>(factors: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Label, usize)>,
    {
        let mut out: Vec<Factor> = Vec::new();
        for (label, dim) in factors {
            if dim == 0 {
                return Err(Error::arg(format!("factor `{label}` has dimension 0")));
            }
            if out.iter().any(|f| f.label == label) {
                return Err(Error::DuplicateLabel(label));
            }
            out.push(Factor { label, dim });
        }
        Ok(Self { factors: out })
    }

    /// Register of qubits with the given labels.
    pub fn qubits(labels: &[Label]) -> Result<Self> {
        Self::new(labels.iter().cloned().map(|l| (l, 2)))
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn labels(&self) -> impl Iterator<Item = &Label> {
        self.factors.iter().map(|f| &f.label)
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Product of the factor dimensions.
    pub fn dim(&self) -> usize {
        self.factors.iter().map(|f| f.dim).product()
    }

    pub fn position(&self, label: &Label) -> Option<usize> {
        self.factors.iter().position(|f| &f.label == label)
    }

    pub fn contains(&self, label: &Label) -> bool {
        self.position(label).is_some()
    }

    pub fn dim_of(&self, label: &Label) -> Result<usize> {
        self.position(label).map(|i| self.factors[i].dim).ok_or_else(|| Error::UnknownLabel(label.clone()))
    }

    /// Positions of `labels`, failing on unknown or repeated labels.
    pub fn positions(&self, labels: &[Label]) -> Result<Vec<usize>> {
        let mut out = Vec::with_capacity(labels.len());
        for l in labels {
            let p = self.position(l).ok_or_else(|| Error::UnknownLabel(l.clone()))?;
            if out.contains(&p) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
            out.push(p);
        }
        Ok(out)
    }

    /// Sub-register of the given positions, in the order given.
    pub(crate) fn select(&self, positions: &[usize]) -> QRegister {
        QRegister { factors: positions.iter().map(|&p| self.factors[p].clone()).collect() }
    }

    /// Concatenation; fails if a label would repeat.
    pub fn concat(&self, other: &QRegister) -> Result<QRegister> {
        QRegister::new(
            self.factors.iter().chain(other.factors.iter()).map(|f| (f.label.clone(), f.dim)),
        )
    }

    /// Same dimensions with every label mirrored.
    pub fn mirrored(&self) -> QRegister {
        QRegister {
            factors: self.factors.iter().map(|f| Factor { label: f.label.mirror(), dim: f.dim }).collect(),
        }
    }

    /// Mixed-radix digits of a flat index.
    pub(crate) fn digits(&self, mut index: usize) -> Vec<usize> {
        let mut d = vec![0; self.factors.len()];
        for (slot, f) in d.iter_mut().zip(&self.factors).rev() {
            *slot = index % f.dim;
            index /= f.dim;
        }
        d
    }

    pub(crate) fn strides(&self) -> Vec<usize> {
        let mut s = vec![1; self.factors.len()];
        for i in (0..self.factors.len().saturating_sub(1)).rev() {
            s[i] = s[i + 1] * self.factors[i + 1].dim;
        }
        s
    }
}

impl fmt::Display for QRegister {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|x| format!("{}:{}", x.label, x.dim)).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}
