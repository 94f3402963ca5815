//! Cycle-length thresholds `φ(n)`: products of integer constants, `n`,
//! `n^k` (k ≤ 6) and `2^n`, e.g. `3*n^2` or `2^n*n`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use crate::error::CaError;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Factor {
    Const(BigUint),
    Power(u32),
    Exp2,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiSpec {
    factors: Vec<Factor>,
}

impl PhiSpec {
    pub fn constant(c: u64) -> Self {
        PhiSpec {
            factors: vec![Factor::Const(BigUint::from(c))],
        }
    }

    pub fn eval(&self, n: u64) -> BigUint {
        let mut acc = BigUint::from(1u32);
        for f in &self.factors {
            match f {
                Factor::Const(c) => acc *= c,
                Factor::Power(k) => acc *= BigUint::from(n).pow(*k),
                Factor::Exp2 => acc <<= n as usize,
            }
        }
        acc
    }
}

impl FromStr for PhiSpec {
    type Err = CaError;

    fn from_str(s: &str) -> Result<Self, CaError> {
        let mut factors = Vec::new();
        let mut col = 1;
        for raw in s.split('*') {
            let tok: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
            let err = |msg: &str| CaError::parse(1, col, format!("{msg} in phi factor {tok:?}"));
            let f = if tok == "n" {
                Factor::Power(1)
            } else if tok == "2^n" {
                Factor::Exp2
            } else if let Some(k) = tok.strip_prefix("n^") {
                let k: u32 = k.parse().map_err(|_| err("bad exponent"))?;
                if k == 0 || k > 6 {
                    return Err(err("exponent must be between 1 and 6"));
                }
                Factor::Power(k)
            } else if !tok.is_empty() && tok.chars().all(|c| c.is_ascii_digit()) {
                let c: BigUint = tok.parse().map_err(|_| err("bad constant"))?;
                if c == BigUint::from(0u32) {
                    return Err(err("constant must be positive"));
                }
                Factor::Const(c)
            } else {
                return Err(err("unrecognized term"));
            };
            factors.push(f);
            col += raw.len() + 1;
        }
        Ok(PhiSpec { factors })
    }
}

impl fmt::Display for PhiSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|x| match x {
                Factor::Const(c) => c.to_string(),
                Factor::Power(1) => "n".into(),
                Factor::Power(k) => format!("n^{k}"),
                Factor::Exp2 => "2^n".into(),
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}
