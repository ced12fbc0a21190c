use std::collections::BTreeMap;
use std::fmt;

use crate::elliptic::curve::Pt;

/// A divisor supported on rational points.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Divisor {
    support: BTreeMap<Pt, i64>,
}

impl Divisor {
    pub fn new() -> Self {
        Divisor::default()
    }

    pub fn from_points<I: IntoIterator<Item = Pt>>(pts: I) -> Self {
        let mut d = Divisor::new();
        for p in pts {
            d.add_point(p, 1);
        }
        d
    }

    pub fn add_point(&mut self, p: Pt, m: i64) {
        let e = self.support.entry(p).or_insert(0);
        *e += m;
        if *e == 0 {
            self.support.remove(&p);
        }
    }

    pub fn with(mut self, p: Pt, m: i64) -> Self {
        self.add_point(p, m);
        self
    }

    pub fn get(&self, p: Pt) -> i64 {
        self.support.get(&p).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> i64 {
        self.support.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Pt, i64)> + '_ {
        self.support.iter().map(|(&p, &m)| (p, m))
    }

    pub fn is_effective(&self) -> bool {
        self.support.values().all(|&m| m > 0)
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.support.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self.iter().map(|(p, m)| if m == 1 { format!("{p}") } else { format!("{m}{p}") }).collect();
        write!(f, "{}", terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fe;

    #[test]
    fn zero_multiplicities_vanish() {
        let p = Pt::Affine(Fe(1), Fe(2));
        let d = Divisor::new().with(p, 2).with(Pt::O, 1).with(p, -2);
        assert_eq!(d.degree(), 1);
        assert_eq!(d.get(p), 0);
        assert_eq!(d.iter().count(), 1);
    }
}
