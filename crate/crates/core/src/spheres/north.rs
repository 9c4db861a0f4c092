use num_traits::Zero;

use super::{transition, transition_inverse, SphereAutomorphism, SphereError};
use crate::gaussian::GaussianRational;
use crate::scalar_poly::ScalarPoly;
use crate::superconformal::SuperconformalMap;
use crate::superfield::{RationalSuperfunction, SuperfieldError};

/// The northern-chart map together with the components on which the
/// closed tilde formulas disagree with the composition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NorthReport {
    pub northern: SuperconformalMap,
    pub closed_form: SuperconformalMap,
    pub mismatches: Vec<&'static str>,
}

/// Where the two charts' component functions have poles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoleReport {
    pub south_ok: bool,
    pub north_ok: bool,
    pub south_poles: Vec<ScalarPoly>,
    pub north_poles: Vec<ScalarPoly>,
}

impl PoleReport {
    pub fn ok(&self) -> bool {
        self.south_ok && self.north_ok
    }
}

fn pow_signed(f: &RationalSuperfunction, k: i32) -> Result<RationalSuperfunction, SuperfieldError> {
    if k >= 0 {
        Ok(f.pow(k as u32))
    } else {
        Ok(f.recip()?.pow(k.unsigned_abs()))
    }
}

/// Every pole lies at the root of `p z + q` (bodies); with `p = 0` there
/// must be no poles.
fn poles_only_at(den: &ScalarPoly, p: &GaussianRational, q: &GaussianRational) -> bool {
    let Some(deg) = den.degree() else { return true };
    if deg == 0 {
        return true;
    }
    if p.is_zero() {
        return false;
    }
    let root = -&(q / p);
    ScalarPoly::linear_root(&root).pow(deg as u32) == *den
}

impl SphereAutomorphism {
    /// `T_N = Iₙ⁻¹ ∘ T_S ∘ Iₙ`, compared with
    /// `f̃ = 1/f(1/z)`, `ψ̃± = −iψ±(1/z)f(1/z)^{±n−1}` and
    /// `g̃± = z^{±n−1}g±(1/z)f(1/z)^{±n−2}(f(1/z) − (n∓1)ψ⁺(1/z)ψ⁻(1/z))`.
    pub fn to_north(&self) -> Result<NorthReport, SphereError> {
        let n = self.n;
        let l = self.generators();
        let i_n = transition(n, l);
        let i_inv = transition_inverse(n, l);
        let northern = i_inv.compose(&self.southern.compose(&i_n)?)?;

        let w = RationalSuperfunction::z_pow(l, 2, -1);
        let at_inv = |g: &RationalSuperfunction| g.compose_theta_free(&w);
        let m = &self.southern;
        let f1 = at_inv(&m.f)?;
        let pp = at_inv(&m.psi_plus)?;
        let pm = at_inv(&m.psi_minus)?;
        let minus_i = RationalSuperfunction::scalar(l, 2, -GaussianRational::i());
        let nn = |k: i32| RationalSuperfunction::scalar(l, 2, GaussianRational::from(k as i64));
        let g_tilde = |g: &RationalSuperfunction, s: i32| -> Result<RationalSuperfunction, SphereError> {
            let e = s * n - 1;
            let pre = &(&RationalSuperfunction::z_pow(l, 2, e) * &at_inv(g)?) * &pow_signed(&f1, s * n - 2)?;
            Ok(&pre * &(&f1 - &(&nn(n - s) * &(&pp * &pm))))
        };
        let closed_form = SuperconformalMap::new(
            f1.recip()?,
            g_tilde(&m.g_plus, 1)?,
            g_tilde(&m.g_minus, -1)?,
            &(&minus_i * &pp) * &pow_signed(&f1, n - 1)?,
            &(&minus_i * &pm) * &pow_signed(&f1, -n - 1)?,
        );
        let mut mismatches = Vec::new();
        for (name, x, y) in [
            ("f", &northern.f, &closed_form.f),
            ("g+", &northern.g_plus, &closed_form.g_plus),
            ("g-", &northern.g_minus, &closed_form.g_minus),
            ("psi+", &northern.psi_plus, &closed_form.psi_plus),
            ("psi-", &northern.psi_minus, &closed_form.psi_minus),
        ] {
            if x != y {
                mismatches.push(name);
            }
        }
        Ok(NorthReport { northern, closed_form, mismatches })
    }

    /// Southern poles only at `z_B = −d_B/c_B`, northern only at `z_B = −a_B/b_B`.
    pub fn pole_report(&self) -> Result<PoleReport, SphereError> {
        let [a, b, c, d] = crate::superconformal::body_mobius(&self.southern.f)
            .ok_or_else(|| SphereError::NotInFamily("body of f is not Mobius".into()))?;
        let north = self.to_north()?.northern;
        let dens = |m: &SuperconformalMap| -> Vec<ScalarPoly> {
            [&m.f, &m.g_plus, &m.g_minus, &m.psi_plus, &m.psi_minus].iter().map(|x| x.pole_denominator()).collect()
        };
        let south_poles = dens(&self.southern);
        let north_poles = dens(&north);
        let south_ok = south_poles.iter().all(|p| poles_only_at(p, &c, &d));
        let north_ok = north_poles.iter().all(|p| poles_only_at(p, &b, &a));
        Ok(PoleReport { south_ok, north_ok, south_poles, north_poles })
    }
}
