//! Diagonal functions of the number operator.
//!
//! A [`NonlinearFn`] is an arbitrary complex-valued function of an integer
//! argument, used both as the deformation f(N) defining a nonlinear coherent
//! state and as a general diagonal operator g(N) acting termwise on number
//! states. Arguments may be negative: shifted compositions such as f(N-m)
//! evaluate below zero on the low end of the spectrum, and the stock
//! functions extend there through the principal branch of the complex square
//! root.

use alloc::borrow::ToOwned;
use alloc::string::String;
use alloc::sync::Arc;
use core::fmt;

use num_complex::Complex;

use crate::Complex64;

/// A deterministic map from an integer index to a complex value.
///
/// Evaluators must be pure: repeated calls with the same argument return the
/// identical value, and evaluation is safe from concurrent contexts.
#[derive(Clone)]
pub struct NonlinearFn {
    name: String,
    eval: Arc<dyn Fn(i64) -> Complex64 + Send + Sync>,
}

impl NonlinearFn {
    pub fn new<F>(name: &str, eval: F) -> Self
    where
        F: Fn(i64) -> Complex64 + Send + Sync + 'static,
    {
        NonlinearFn {
            name: name.to_owned(),
            eval: Arc::new(eval),
        }
    }

    /// Short label used in error messages and reports.
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, n: i64) -> Complex64 {
        (self.eval)(n)
    }

    /// f(n) = 1: reduces every nonlinear construction to its linear
    /// (ordinary coherent state) counterpart.
    pub fn unit() -> Self {
        NonlinearFn::new("1", |_| Complex::new(1.0, 0.0))
    }

    /// f(n) = n + 1.
    pub fn n_plus_one() -> Self {
        NonlinearFn::new("n+1", |n| Complex::new((n + 1) as f64, 0.0))
    }

    /// f(n) = 1/(n+1). Infinite at n = -1; composites that reach that
    /// argument must short-circuit on their own zero factors first.
    pub fn inv_n_plus_one() -> Self {
        NonlinearFn::new("1/(n+1)", |n| {
            Complex::new(1.0, 0.0) / Complex::new((n + 1) as f64, 0.0)
        })
    }

    /// f(n) = 1/sqrt(n+1), the deformation whose eigenstates are geometric
    /// states. Negative arguments below -1 take the principal branch
    /// (purely imaginary values); n = -1 is a pole.
    pub fn inv_sqrt_n_plus_one() -> Self {
        NonlinearFn::new("1/sqrt(n+1)", |n| {
            Complex::new(1.0, 0.0) / Complex::new((n + 1) as f64, 0.0).sqrt()
        })
    }

    /// Same function with the argument shifted: returns n -> f(n + delta).
    pub fn shifted(&self, delta: i64) -> Self {
        let inner = self.eval.clone();
        let name = if delta >= 0 {
            alloc::format!("{}@(n+{delta})", self.name)
        } else {
            alloc::format!("{}@(n-{})", self.name, -delta)
        };
        NonlinearFn {
            name,
            eval: Arc::new(move |n| inner(n + delta)),
        }
    }

    /// Effective nonlinearity of an m-photon-added state:
    /// g(n) = f(n-m) * (1 - m/(n+1)).
    ///
    /// The bracket is evaluated first and short-circuits the product to
    /// zero, so poles of f at the bracket's root (n = m-1) never surface.
    pub fn photon_added(&self, m: u32) -> Self {
        let inner = self.eval.clone();
        let m = i64::from(m);
        NonlinearFn {
            name: alloc::format!("{}-added(m={m})", self.name),
            eval: Arc::new(move |n| {
                let bracket = 1.0 - m as f64 / (n + 1) as f64;
                if bracket == 0.0 {
                    return Complex::new(0.0, 0.0);
                }
                inner(n - m) * bracket
            }),
        }
    }

    /// Effective nonlinearity of the negative-m family:
    /// g(n) = f(n+m) * (1 + m/(n+1)).
    pub fn photon_added_negative(&self, m: u32) -> Self {
        let inner = self.eval.clone();
        let m = i64::from(m);
        NonlinearFn {
            name: alloc::format!("{}-added(m=-{m})", self.name),
            eval: Arc::new(move |n| inner(n + m) * (1.0 + m as f64 / (n + 1) as f64)),
        }
    }

    /// Effective two-photon nonlinearity after m-fold photon addition:
    /// g(n) = F(n-m) * (1 - m/(n+2)) * (1 - m/(n+1)), with both brackets
    /// short-circuiting as in [`NonlinearFn::photon_added`].
    pub fn two_photon_added(&self, m: u32) -> Self {
        let inner = self.eval.clone();
        let m = i64::from(m);
        NonlinearFn {
            name: alloc::format!("{}-2ph-added(m={m})", self.name),
            eval: Arc::new(move |n| {
                let b1 = 1.0 - m as f64 / (n + 2) as f64;
                let b2 = 1.0 - m as f64 / (n + 1) as f64;
                if b1 == 0.0 || b2 == 0.0 {
                    return Complex::new(0.0, 0.0);
                }
                inner(n - m) * b1 * b2
            }),
        }
    }
}

impl fmt::Debug for NonlinearFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NonlinearFn").field("name", &self.name).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stock_functions() {
        assert_eq!(NonlinearFn::unit().eval(7), Complex::new(1.0, 0.0));
        assert_eq!(NonlinearFn::n_plus_one().eval(4), Complex::new(5.0, 0.0));
        assert_eq!(
            NonlinearFn::inv_sqrt_n_plus_one().eval(3),
            Complex::new(0.5, 0.0)
        );
    }

    #[test]
    fn inv_sqrt_is_imaginary_below_minus_one() {
        let f = NonlinearFn::inv_sqrt_n_plus_one();
        let v = f.eval(-5); // 1/sqrt(-4) = -i/2
        assert!((v.re).abs() < 1e-15);
        assert!((v.im + 0.5).abs() < 1e-15);
    }

    #[test]
    fn shifted_evaluates_at_offset() {
        let f = NonlinearFn::n_plus_one().shifted(3);
        assert_eq!(f.eval(0), Complex::new(4.0, 0.0));
        assert_eq!(f.eval(-3), Complex::new(1.0, 0.0));
    }

    #[test]
    fn added_form_short_circuits_the_pole() {
        // f = 1/sqrt(n+1) has a pole at n = -1; the m-added composite hits
        // that argument exactly where the bracket vanishes.
        let g = NonlinearFn::inv_sqrt_n_plus_one().photon_added(3);
        let at_root = g.eval(2);
        assert_eq!(at_root, Complex::new(0.0, 0.0));
        assert!(g.eval(3).is_finite());
        assert!(g.eval(1).norm() > 0.0);
    }

    #[test]
    fn two_photon_added_short_circuits_both_brackets() {
        let g = NonlinearFn::inv_n_plus_one().two_photon_added(2);
        assert_eq!(g.eval(0), Complex::new(0.0, 0.0)); // 1 - 2/(0+2) = 0
        assert_eq!(g.eval(1), Complex::new(0.0, 0.0)); // 1 - 2/(1+1) = 0
        assert!(g.eval(2).is_finite());
    }
}
