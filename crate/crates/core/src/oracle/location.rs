use super::{clamp_gain, Anchor, BoxedAnchor, ElementId, SubmodularOracle};
use crate::error::{Result, SkpError};

/// Facility location: `f(S) = Σ_i max_{j∈S} v_ij`, with the max over `∅` being 0.
#[derive(Debug, Clone, PartialEq)]
pub struct FacilityLocation {
    facilities: usize,
    customers: usize,
    /// Row-major `customers × facilities`.
    profits: Vec<f64>,
    /// Column-major copy so a facility's column is contiguous.
    by_facility: Vec<f64>,
    integral: bool,
}

impl FacilityLocation {
    /// `profits[i][j]` is the profit of customer `i` served by facility `j`.
    pub fn new(facilities: usize, profits: Vec<Vec<f64>>) -> Result<Self> {
        let customers = profits.len();
        let mut flat = Vec::with_capacity(customers * facilities);
        for (i, row) in profits.iter().enumerate() {
            if row.len() != facilities {
                return Err(SkpError::Syntax {
                    line: i + 1,
                    message: format!(
                        "customer row has {} profits, expected {facilities}",
                        row.len()
                    ),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                if !(v >= 0.0 && v.is_finite()) {
                    return Err(SkpError::InvalidValue {
                        element: j,
                        value: v,
                        reason: "facility profits must be finite and non-negative",
                    });
                }
            }
            flat.extend_from_slice(row);
        }
        let mut by_facility = vec![0.0; flat.len()];
        for i in 0..customers {
            for j in 0..facilities {
                by_facility[j * customers + i] = flat[i * facilities + j];
            }
        }
        let integral = flat.iter().all(|v| v.fract() == 0.0);
        Ok(FacilityLocation {
            facilities,
            customers,
            profits: flat,
            by_facility,
            integral,
        })
    }

    pub fn customer_count(&self) -> usize {
        self.customers
    }

    pub fn profit(&self, customer: usize, facility: usize) -> f64 {
        self.profits[customer * self.facilities + facility]
    }

    fn column(&self, facility: usize) -> &[f64] {
        &self.by_facility[facility * self.customers..(facility + 1) * self.customers]
    }
}

impl SubmodularOracle for FacilityLocation {
    fn ground_size(&self) -> usize {
        self.facilities
    }

    fn value(&self, set: &[ElementId]) -> f64 {
        let mut best = vec![0.0f64; self.customers];
        for &j in set {
            for (b, &v) in best.iter_mut().zip(self.column(j)) {
                *b = b.max(v);
            }
        }
        best.iter().sum()
    }

    fn anchor<'a>(&'a self, base: &[ElementId]) -> BoxedAnchor<'a> {
        let mut anchor = LocationAnchor {
            oracle: self,
            best: vec![0.0; self.customers],
            members: vec![false; self.facilities],
            value: 0.0,
        };
        for &e in base {
            anchor.insert(e);
        }
        Box::new(anchor)
    }

    fn is_integral(&self) -> bool {
        self.integral
    }
}

#[derive(Clone)]
struct LocationAnchor<'a> {
    oracle: &'a FacilityLocation,
    best: Vec<f64>,
    members: Vec<bool>,
    value: f64,
}

impl<'a> Anchor<'a> for LocationAnchor<'a> {
    fn value(&self) -> f64 {
        self.value
    }

    fn gain(&self, element: ElementId) -> f64 {
        if self.members[element] {
            return 0.0;
        }
        let g: f64 = self
            .best
            .iter()
            .zip(self.oracle.column(element))
            .map(|(&b, &v)| if v > b { v - b } else { 0.0 })
            .sum();
        clamp_gain(g)
    }

    fn insert(&mut self, element: ElementId) {
        if self.members[element] {
            return;
        }
        self.value += self.gain(element);
        self.members[element] = true;
        for (b, &v) in self.best.iter_mut().zip(self.oracle.column(element)) {
            *b = b.max(v);
        }
    }

    fn fork(&self) -> BoxedAnchor<'a> {
        Box::new(self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_customer_takes_max() {
        let f = FacilityLocation::new(2, vec![vec![2.0, 5.0]]).unwrap();
        assert_eq!(f.evaluate(&[0, 1]).unwrap(), 5.0);
        assert_eq!(f.evaluate(&[]).unwrap(), 0.0);
    }

    #[test]
    fn two_customers() {
        let f = FacilityLocation::new(2, vec![vec![3.0, 1.0], vec![0.0, 4.0]]).unwrap();
        assert_eq!(f.evaluate(&[1]).unwrap(), 5.0);
        let mut a = f.anchor(&[]);
        a.insert(0);
        assert_eq!(a.gain(1), 4.0);
        a.insert(1);
        assert_eq!(a.value(), 7.0);
    }

    #[test]
    fn negative_profit_rejected() {
        assert!(FacilityLocation::new(1, vec![vec![-1.0]]).is_err());
        assert!(FacilityLocation::new(2, vec![vec![1.0]]).is_err());
    }
}
