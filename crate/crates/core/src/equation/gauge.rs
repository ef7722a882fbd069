//! Gauge transformations: a prefactor scale·exp(c1 w + c2/w)·w^r times a
//! function evaluated at a mapped argument.

use serde::{Deserialize, Serialize};

use crate::error::{HeunError, Result};
use crate::jet::Jet;
use crate::{Complex, I};

/// Change of independent variable x ↦ φ(x).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum VarMap {
    Identity,
    /// φ(x) = c/x
    Inversion(Complex),
    /// φ(u) = e^{λu}
    Exponential(Complex),
    /// φ(ρ) = ρ²
    Square,
    /// φ(u) = z0 cosh²(σu/2)
    Cosh2 { z0: Complex, sigma: Complex },
    /// φ(u) = (z0/2)(i sinh σu + 1)
    ISinh { z0: Complex, sigma: Complex },
}

impl VarMap {
    pub fn jet(&self, x: Complex) -> Jet {
        let one = Complex::new(1.0, 0.0);
        let zero = Complex::new(0.0, 0.0);
        match *self {
            VarMap::Identity => Jet::new(x, one, zero),
            VarMap::Inversion(c) => Jet::new(c / x, -c / (x * x), 2.0 * c / (x * x * x)),
            VarMap::Exponential(l) => {
                let e = (l * x).exp();
                Jet::new(e, l * e, l * l * e)
            }
            VarMap::Square => Jet::new(x * x, 2.0 * x, Complex::new(2.0, 0.0)),
            VarMap::Cosh2 { z0, sigma } => {
                let s = sigma * x;
                Jet::new(
                    z0 * (1.0 + s.cosh()) / 2.0,
                    z0 * sigma * s.sinh() / 2.0,
                    z0 * sigma * sigma * s.cosh() / 2.0,
                )
            }
            VarMap::ISinh { z0, sigma } => {
                let s = sigma * x;
                Jet::new(
                    z0 / 2.0 * (I * s.sinh() + 1.0),
                    z0 / 2.0 * I * sigma * s.cosh(),
                    z0 / 2.0 * I * sigma * sigma * s.sinh(),
                )
            }
        }
    }

    /// Whether the prefactor of a stage is written in the mapped variable.
    fn prefactor_on_image(&self) -> bool {
        !matches!(self, VarMap::Identity | VarMap::Inversion(_))
    }

    /// log of the prefactor variable, continued analytically where the map
    /// makes that possible.
    fn ln_image(&self, x: Complex, w: Complex) -> Complex {
        match *self {
            VarMap::Exponential(l) => l * x,
            VarMap::Square => 2.0 * x.ln(),
            _ => w.ln(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaugeStage {
    pub scale: Complex,
    pub c1: Complex,
    pub c2: Complex,
    pub r: Complex,
    pub var: VarMap,
}

impl GaugeStage {
    pub fn new(c1: Complex, c2: Complex, r: Complex, var: VarMap) -> Self {
        GaugeStage {
            scale: Complex::new(1.0, 0.0),
            c1,
            c2,
            r,
            var,
        }
    }

    /// Jet of the prefactor with respect to the stage's own variable.
    pub fn prefactor(&self, x: Complex) -> Result<Jet> {
        let phi = self.var.jet(x);
        let (w, wj, lnw) = if self.var.prefactor_on_image() {
            (phi.v, phi, self.var.ln_image(x, phi.v))
        } else {
            (x, Jet::variable(x), x.ln())
        };
        if w.norm() == 0.0 {
            return Err(HeunError::Domain("gauge prefactor at zero".into()));
        }
        let log_v = self.scale.ln() + self.c1 * w + self.c2 / w + self.r * lnw;
        let dl = self.c1 - self.c2 / (w * w) + self.r / w;
        let ddl = 2.0 * self.c2 / (w * w * w) - self.r / (w * w);
        let log_jet = Jet::compose(Jet::new(log_v, dl, ddl), wj);
        Ok(log_jet.exp())
    }
}

/// A composable gauge. `apply(S)(x) = P1(x)·P2(φ1(x))·…·S(φ_k(…φ1(x)))`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct GaugeMap {
    pub stages: Vec<GaugeStage>,
}

impl GaugeMap {
    pub fn identity() -> Self {
        GaugeMap { stages: Vec::new() }
    }

    pub fn single(stage: GaugeStage) -> Self {
        GaugeMap { stages: vec![stage] }
    }

    pub fn is_identity(&self) -> bool {
        self.stages.is_empty()
    }

    /// `self ∘ inner`: first transport with `inner`, then with `self`.
    pub fn compose(&self, inner: &GaugeMap) -> GaugeMap {
        let mut stages = self.stages.clone();
        stages.extend(inner.stages.iter().copied());
        GaugeMap { stages }
    }

    pub fn scaled(mut self, k: Complex) -> GaugeMap {
        if self.stages.is_empty() {
            self.stages.push(GaugeStage::new(
                Complex::new(0.0, 0.0),
                Complex::new(0.0, 0.0),
                Complex::new(0.0, 0.0),
                VarMap::Identity,
            ));
        }
        self.stages[0].scale *= k;
        self
    }

    /// The argument at which the transported function is finally evaluated.
    pub fn map_point(&self, x: Complex) -> Complex {
        self.stages.iter().fold(x, |acc, s| s.var.jet(acc).v)
    }

    /// Evaluates the transported function at `x`.
    pub fn apply<F>(&self, source: F, x: Complex) -> Result<Jet>
    where
        F: Fn(Complex) -> Result<Jet>,
    {
        apply_stages(&self.stages, &source, x)
    }
}

fn apply_stages<F>(stages: &[GaugeStage], source: &F, x: Complex) -> Result<Jet>
where
    F: Fn(Complex) -> Result<Jet>,
{
    let Some((first, rest)) = stages.split_first() else {
        return source(x);
    };
    let phi = first.var.jet(x);
    let inner = apply_stages(rest, source, phi.v)?;
    Ok(first.prefactor(x)? * Jet::compose(inner, phi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn fd(f: &dyn Fn(Complex) -> Complex, x: Complex) -> (Complex, Complex) {
        let h = 1e-4;
        let d1 = (f(x + h) - f(x - h)) / (2.0 * h);
        let d2 = (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
        (d1, d2)
    }

    #[test]
    fn prefactor_derivatives_match_finite_differences() {
        let g = GaugeMap::single(GaugeStage::new(cx(0.3, 1.0), cx(-0.5, 0.2), cx(0.7, -0.4), VarMap::Inversion(cx(0.0, 2.0))))
            .compose(&GaugeMap::single(GaugeStage::new(cx(0.0, 0.0), cx(1.0, 0.0), cx(-1.0, 0.0), VarMap::Identity)));
        let src = |z: Complex| Ok(Jet::new(z.sin(), z.cos(), -z.sin()));
        let x = cx(1.1, 0.4);
        let j = g.apply(src, x).unwrap();
        let val = |x: Complex| g.apply(src, x).unwrap().v;
        let (d1, d2) = fd(&val, x);
        assert!((j.d1 - d1).norm() < 1e-7 * j.d1.norm());
        assert!((j.d2 - d2).norm() < 1e-5 * j.d2.norm());
    }

    #[test]
    fn identity_and_composition() {
        let id = GaugeMap::identity();
        let s = GaugeMap::single(GaugeStage::new(cx(1.0, 0.0), cx(0.0, 0.0), cx(0.5, 0.0), VarMap::Square));
        assert_eq!(id.compose(&s), s);
        assert_eq!(s.compose(&id), s);
        assert_eq!(s.compose(&s).map_point(cx(2.0, 0.0)), cx(16.0, 0.0));
    }

    #[test]
    fn variable_maps_at_origin() {
        let z0 = cx(3.0, 1.0);
        let s = cx(0.5, 0.0);
        assert_eq!(VarMap::Cosh2 { z0, sigma: s }.jet(cx(0.0, 0.0)).v, z0);
        assert_eq!(VarMap::ISinh { z0, sigma: s }.jet(cx(0.0, 0.0)).v, z0 / 2.0);
    }
}
