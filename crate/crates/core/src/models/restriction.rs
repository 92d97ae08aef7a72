use std::fmt;

/// Partial assignment of the inputs `0..host`: `Some(bit)` fixes an input,
/// `None` leaves it starred.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Restriction {
    values: Vec<Option<bool>>,
}

impl Restriction {
    pub fn all_star(host: usize) -> Self {
        Restriction {
            values: vec![None; host],
        }
    }

    pub fn from_values(values: Vec<Option<bool>>) -> Self {
        Restriction { values }
    }

    /// Complete restriction fixing every input.
    pub fn complete(bits: &[bool]) -> Self {
        Restriction {
            values: bits.iter().map(|&b| Some(b)).collect(),
        }
    }

    pub fn host(&self) -> usize {
        self.values.len()
    }

    pub fn get(&self, x: usize) -> Option<bool> {
        self.values[x]
    }

    pub fn set(&mut self, x: usize, value: Option<bool>) {
        self.values[x] = value;
    }

    pub fn values(&self) -> &[Option<bool>] {
        &self.values
    }

    pub fn zeros(&self) -> usize {
        self.values.iter().filter(|v| **v == Some(false)).count()
    }

    pub fn ones(&self) -> usize {
        self.values.iter().filter(|v| **v == Some(true)).count()
    }

    pub fn star_count(&self) -> usize {
        self.values.iter().filter(|v| v.is_none()).count()
    }

    pub fn stars(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&x| self.values[x].is_none()).collect()
    }

    pub fn is_balanced(&self) -> bool {
        self.zeros() == self.ones()
    }

    /// `self` extends `base` when it only changes starred positions of `base`.
    pub fn extends(&self, base: &Restriction) -> bool {
        self.host() == base.host()
            && self
                .values
                .iter()
                .zip(&base.values)
                .all(|(new, old)| new == old || old.is_none())
    }

    /// Fills the stars of `self` from `later`, keeping every decided value.
    pub fn merge(&self, later: &Restriction) -> Restriction {
        assert_eq!(self.host(), later.host());
        Restriction {
            values: self
                .values
                .iter()
                .zip(&later.values)
                .map(|(a, b)| a.or(*b))
                .collect(),
        }
    }
}

impl fmt::Display for Restriction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.values {
            f.write_str(match v {
                Some(false) => "0",
                Some(true) => "1",
                None => "*",
            })?;
        }
        Ok(())
    }
}
