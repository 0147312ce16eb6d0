//! Finitely generated ideals and membership certificates.

use serde_json::{json, Value as Json};

use crate::error::{Error, Result};
use crate::ring::{same_ring, Ring, RingDescriptor, RingElement, Value};

#[derive(Clone, Debug)]
pub struct IdealPresentation {
    pub ring: Ring,
    pub generators: Vec<RingElement>,
}

impl PartialEq for IdealPresentation {
    fn eq(&self, o: &Self) -> bool {
        same_ring(&self.ring, &o.ring) && self.generators == o.generators
    }
}

impl Eq for IdealPresentation {}

impl IdealPresentation {
    pub fn new(ring: &Ring, generators: Vec<RingElement>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::Malformed("ideal needs at least one generator".into()));
        }
        if generators.iter().any(|g| !same_ring(&g.ring, ring)) {
            return Err(Error::DescriptorMismatch);
        }
        Ok(IdealPresentation { ring: ring.clone(), generators })
    }

    pub fn principal(g: &RingElement) -> Self {
        IdealPresentation { ring: g.ring.clone(), generators: vec![g.clone()] }
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Generators `g_i g_j` for `i <= j`, in row-major order.
    pub fn square(&self) -> Self {
        let g = &self.generators;
        let mut out = Vec::new();
        for i in 0..g.len() {
            for j in i..g.len() {
                out.push(g[i].mul(&g[j]));
            }
        }
        IdealPresentation { ring: self.ring.clone(), generators: out }
    }

    /// The extended ideal in a polynomial ring (or localization) over this ring.
    pub fn extend(&self, ring: &Ring) -> Result<Self> {
        let gens = self.generators.iter().map(|g| g.lift(ring)).collect::<Result<Vec<_>>>()?;
        Ok(IdealPresentation { ring: ring.clone(), generators: gens })
    }

    /// A certificate for `d` using a single generator, when the ring is `ℤ/m` and one exists.
    pub fn certify_member(&self, d: &RingElement) -> Option<CertifiedElement> {
        let m = match &*self.ring {
            RingDescriptor::Zmod { m } => *m as i128,
            _ => return None,
        };
        let dv = int_value(d)? as i128;
        for (k, g) in self.generators.iter().enumerate() {
            let gv = int_value(g)? as i128;
            let h = gcd(gcd(gv, m), m);
            if dv % h != 0 {
                continue;
            }
            let mh = m / h;
            let c = if mh == 1 { 0 } else { (dv / h) * inv_mod(gv / h, mh)? % mh };
            let mut coeffs = vec![RingElement::zero(&self.ring); self.len()];
            coeffs[k] = RingElement::int(&self.ring, c as i64);
            let out = certify(self, coeffs).ok()?;
            if out.value == *d {
                return Some(out);
            }
        }
        None
    }

    pub fn to_json(&self) -> Json {
        json!({
            "ring": self.ring.to_json(),
            "gens": self.generators.iter().map(RingElement::to_json).collect::<Vec<_>>(),
        })
    }

    /// Accepts `{"ring":..,"gens":[..]}` or a bare generator list over `ring`.
    pub fn from_json(ring: Option<&Ring>, j: &Json) -> Result<Self> {
        let (ring, gens) = match j {
            Json::Array(gens) => {
                let ring = ring.ok_or_else(|| Error::Malformed("ideal without ring".into()))?;
                (ring.clone(), gens)
            }
            Json::Object(o) => {
                let ring = match o.get("ring") {
                    Some(r) => crate::ring::RingDescriptor::from_json(r)?,
                    None => ring.ok_or_else(|| Error::Malformed("ideal without ring".into()))?.clone(),
                };
                let gens = o
                    .get("gens")
                    .and_then(Json::as_array)
                    .ok_or_else(|| Error::Malformed("ideal: missing gens".into()))?;
                (ring, gens)
            }
            _ => return Err(Error::Malformed("ideal".into())),
        };
        let gens = gens.iter().map(|g| RingElement::from_json(&ring, g)).collect::<Result<Vec<_>>>()?;
        Self::new(&ring, gens)
    }
}

fn int_value(x: &RingElement) -> Option<u64> {
    match x.v {
        Value::Int(v) => Some(v),
        _ => None,
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}

fn inv_mod(a: i128, m: i128) -> Option<i128> {
    let (mut r0, mut r1, mut s0, mut s1) = (a.rem_euclid(m), m, 1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    (r0 == 1).then(|| s0.rem_euclid(m))
}

/// A ring element with an explicit witness of membership in `ideal`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedElement {
    pub ideal: IdealPresentation,
    pub coefficients: Vec<RingElement>,
    pub value: RingElement,
}

pub fn certify(ideal: &IdealPresentation, coefficients: Vec<RingElement>) -> Result<CertifiedElement> {
    if coefficients.len() != ideal.len() {
        return Err(Error::LengthMismatch { expected: ideal.len(), got: coefficients.len() });
    }
    if coefficients.iter().any(|c| !same_ring(&c.ring, &ideal.ring)) {
        return Err(Error::DescriptorMismatch);
    }
    let value = dot(&ideal.ring, &coefficients, &ideal.generators);
    Ok(CertifiedElement { ideal: ideal.clone(), coefficients, value })
}

fn dot(ring: &Ring, a: &[RingElement], b: &[RingElement]) -> RingElement {
    a.iter().zip(b).fold(RingElement::zero(ring), |acc, (x, y)| acc.add(&x.mul(y)))
}

/// Certificate for `a.value * b.value` over the pairwise-product presentation of the square.
pub fn product_certificate(a: &CertifiedElement, b: &CertifiedElement) -> Result<CertifiedElement> {
    if a.ideal != b.ideal {
        return Err(Error::IdealMismatch);
    }
    let (x, y) = (&a.coefficients, &b.coefficients);
    let mut coeffs = Vec::new();
    for i in 0..x.len() {
        for j in i..x.len() {
            let c = if i == j { x[i].mul(&y[i]) } else { x[i].mul(&y[j]).add(&x[j].mul(&y[i])) };
            coeffs.push(c);
        }
    }
    let sq = a.ideal.square();
    let out = certify(&sq, coeffs)?;
    debug_assert_eq!(out.value, a.value.mul(&b.value));
    Ok(out)
}

impl CertifiedElement {
    pub fn zero(ideal: &IdealPresentation) -> Self {
        let z = RingElement::zero(&ideal.ring);
        CertifiedElement { ideal: ideal.clone(), coefficients: vec![z.clone(); ideal.len()], value: z }
    }

    /// The `k`-th generator, certified by the unit vector.
    pub fn generator(ideal: &IdealPresentation, k: usize) -> Self {
        let mut c = vec![RingElement::zero(&ideal.ring); ideal.len()];
        c[k] = RingElement::one(&ideal.ring);
        CertifiedElement { ideal: ideal.clone(), coefficients: c, value: ideal.generators[k].clone() }
    }

    /// Recompute the dot product and compare with the cached value.
    pub fn is_valid(&self) -> bool {
        self.coefficients.len() == self.ideal.len()
            && dot(&self.ideal.ring, &self.coefficients, &self.ideal.generators) == self.value
    }

    pub fn validate(&self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(Error::CertificateInvalid(format!("value {} does not match coefficients", self.value)))
        }
    }

    fn map(&self, f: impl Fn(&RingElement) -> RingElement) -> Self {
        CertifiedElement {
            ideal: self.ideal.clone(),
            coefficients: self.coefficients.iter().map(&f).collect(),
            value: f(&self.value),
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if self.ideal != o.ideal {
            return Err(Error::IdealMismatch);
        }
        Ok(CertifiedElement {
            ideal: self.ideal.clone(),
            coefficients: self.coefficients.iter().zip(&o.coefficients).map(|(a, b)| a.add(b)).collect(),
            value: self.value.add(&o.value),
        })
    }

    pub fn neg(&self) -> Self {
        self.map(RingElement::neg)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    /// Multiply by an arbitrary ring element; the ideal absorbs it.
    pub fn scale(&self, r: &RingElement) -> Self {
        self.map(|c| c.mul(r))
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.map(|c| c.scale(k))
    }

    pub fn embed(&self, ring: &Ring) -> Result<Self> {
        self.lift(ring)
    }

    /// Carry the certificate into a larger polynomial ring (see [`RingElement::lift`]).
    pub fn lift(&self, ring: &Ring) -> Result<Self> {
        Ok(CertifiedElement {
            ideal: self.ideal.extend(ring)?,
            coefficients: self.coefficients.iter().map(|c| c.lift(ring)).collect::<Result<_>>()?,
            value: self.value.lift(ring)?,
        })
    }

    /// Substitute `var -> var^k` in coefficients and value. Generators must not involve `var`.
    pub fn inflate(&self, var: &str, k: u32) -> Result<Self> {
        Ok(CertifiedElement {
            ideal: self.ideal.clone(),
            coefficients: self.coefficients.iter().map(|c| c.inflate(var, k)).collect::<Result<_>>()?,
            value: self.value.inflate(var, k)?,
        })
    }

    pub fn to_json(&self) -> Json {
        json!({
            "coeffs": self.coefficients.iter().map(RingElement::to_json).collect::<Vec<_>>(),
            "value": self.value.to_json(),
        })
    }

    /// Accepts `{"coeffs":[..]}` (a `value` field, if present, must agree) or a bare coefficient list.
    pub fn from_json(ideal: &IdealPresentation, j: &Json) -> Result<Self> {
        let list = match j {
            Json::Array(a) => a,
            Json::Object(o) => o
                .get("coeffs")
                .and_then(Json::as_array)
                .ok_or_else(|| Error::Malformed("certificate: missing coeffs".into()))?,
            _ => return Err(Error::Malformed("certificate".into())),
        };
        let coeffs =
            list.iter().map(|c| RingElement::from_json(&ideal.ring, c)).collect::<Result<Vec<_>>>()?;
        let out = certify(ideal, coeffs)?;
        if let Some(v) = j.get("value") {
            if RingElement::from_json(&ideal.ring, v)? != out.value {
                return Err(Error::CertificateInvalid("stated value disagrees with coefficients".into()));
            }
        }
        Ok(out)
    }
}
