//! The ring tower: `Z/m`, polynomial extensions and localizations at one element.
//!
//! Elements are plain [`Value`] trees interpreted against a [`RingDescriptor`];
//! [`RingElement`] pairs the two.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value as Json};

use crate::error::{Error, Result};

pub type Ring = Arc<RingDescriptor>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingDescriptor {
    Zmod { m: u64 },
    Poly { base: Ring, vars: Vec<String> },
    /// Localization at a caller-asserted non-zero-divisor `denom` of `base`.
    Loc { base: Ring, denom: Value },
}

/// Raw payload. Polynomial maps never store zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Int(u64),
    Poly(BTreeMap<Vec<u32>, Value>),
    Frac(Box<Value>, u32),
}

pub fn zmod(m: u64) -> Result<Ring> {
    if m < 2 {
        return Err(Error::BadDescriptor(format!("modulus {m} < 2")));
    }
    Ok(Arc::new(RingDescriptor::Zmod { m }))
}

pub fn poly(base: &Ring, vars: &[&str]) -> Result<Ring> {
    let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
    check_vars(&vars)?;
    Ok(Arc::new(RingDescriptor::Poly { base: base.clone(), vars }))
}

pub fn localized(base: &Ring, denom: &RingElement) -> Result<Ring> {
    if !same_ring(base, &denom.ring) {
        return Err(Error::DescriptorMismatch);
    }
    if denom.is_zero() {
        return Err(Error::BadDescriptor("zero denominator".into()));
    }
    Ok(Arc::new(RingDescriptor::Loc { base: base.clone(), denom: denom.v.clone() }))
}

fn check_vars(vars: &[String]) -> Result<()> {
    for (k, v) in vars.iter().enumerate() {
        if v.is_empty() {
            return Err(Error::BadDescriptor("empty variable name".into()));
        }
        if vars[..k].contains(v) {
            return Err(Error::BadDescriptor(format!("duplicate variable {v}")));
        }
    }
    Ok(())
}

pub fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn modp(x: i128, m: u64) -> u64 {
    x.rem_euclid(m as i128) as u64
}

impl RingDescriptor {
    pub fn zero(&self) -> Value {
        match self {
            RingDescriptor::Zmod { .. } => Value::Int(0),
            RingDescriptor::Poly { .. } => Value::Poly(BTreeMap::new()),
            RingDescriptor::Loc { base, .. } => Value::Frac(Box::new(base.zero()), 0),
        }
    }

    pub fn from_int(&self, x: i64) -> Value {
        match self {
            RingDescriptor::Zmod { m } => Value::Int(modp(x as i128, *m)),
            RingDescriptor::Poly { base, vars } => {
                let c = base.from_int(x);
                let mut map = BTreeMap::new();
                if !base.is_zero(&c) {
                    map.insert(vec![0; vars.len()], c);
                }
                Value::Poly(map)
            }
            RingDescriptor::Loc { base, .. } => Value::Frac(Box::new(base.from_int(x)), 0),
        }
    }

    pub fn one(&self) -> Value {
        self.from_int(1)
    }

    /// Structural check that `v` is shaped like an element of this ring.
    pub fn accepts(&self, v: &Value) -> bool {
        match (self, v) {
            (RingDescriptor::Zmod { m }, Value::Int(x)) => x < m,
            (RingDescriptor::Poly { base, vars }, Value::Poly(map)) => map
                .iter()
                .all(|(k, c)| k.len() == vars.len() && base.accepts(c) && !base.is_zero(c)),
            (RingDescriptor::Loc { base, .. }, Value::Frac(n, _)) => base.accepts(n),
            _ => false,
        }
    }

    pub fn is_zero(&self, v: &Value) -> bool {
        match v {
            Value::Int(x) => *x == 0,
            Value::Poly(map) => map.is_empty(),
            Value::Frac(n, _) => match self {
                RingDescriptor::Loc { base, .. } => base.is_zero(n),
                _ => false,
            },
        }
    }

    pub fn eq_val(&self, a: &Value, b: &Value) -> bool {
        match self {
            RingDescriptor::Zmod { .. } => a == b,
            RingDescriptor::Poly { base, .. } => match (a, b) {
                (Value::Poly(x), Value::Poly(y)) => {
                    x.len() == y.len()
                        && x.iter().all(|(k, c)| y.get(k).is_some_and(|d| base.eq_val(c, d)))
                }
                _ => false,
            },
            RingDescriptor::Loc { base, denom } => match (a, b) {
                (Value::Frac(x, i), Value::Frac(y, j)) => {
                    let lhs = base.mul(x, &base.pow(denom, *j));
                    let rhs = base.mul(y, &base.pow(denom, *i));
                    base.eq_val(&lhs, &rhs)
                }
                _ => false,
            },
        }
    }

    pub fn add(&self, a: &Value, b: &Value) -> Value {
        match (self, a, b) {
            (RingDescriptor::Zmod { m }, Value::Int(x), Value::Int(y)) => {
                Value::Int(((*x as u128 + *y as u128) % *m as u128) as u64)
            }
            (RingDescriptor::Poly { base, .. }, Value::Poly(x), Value::Poly(y)) => {
                let mut out = x.clone();
                for (k, c) in y {
                    add_term(base, &mut out, k, c);
                }
                Value::Poly(out)
            }
            (RingDescriptor::Loc { base, denom }, Value::Frac(x, i), Value::Frac(y, j)) => {
                let e = (*i).max(*j);
                let xs = base.mul(x, &base.pow(denom, e - i));
                let ys = base.mul(y, &base.pow(denom, e - j));
                Value::Frac(Box::new(base.add(&xs, &ys)), e)
            }
            _ => panic!("value does not match ring descriptor"),
        }
    }

    pub fn neg(&self, a: &Value) -> Value {
        match (self, a) {
            (RingDescriptor::Zmod { m }, Value::Int(x)) => Value::Int((*m - *x) % *m),
            (RingDescriptor::Poly { base, .. }, Value::Poly(x)) => {
                Value::Poly(x.iter().map(|(k, c)| (k.clone(), base.neg(c))).collect())
            }
            (RingDescriptor::Loc { base, .. }, Value::Frac(x, i)) => {
                Value::Frac(Box::new(base.neg(x)), *i)
            }
            _ => panic!("value does not match ring descriptor"),
        }
    }

    pub fn sub(&self, a: &Value, b: &Value) -> Value {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Value, b: &Value) -> Value {
        match (self, a, b) {
            (RingDescriptor::Zmod { m }, Value::Int(x), Value::Int(y)) => {
                Value::Int(((*x as u128 * *y as u128) % *m as u128) as u64)
            }
            (RingDescriptor::Poly { base, .. }, Value::Poly(x), Value::Poly(y)) => {
                let mut out = BTreeMap::new();
                for (kx, cx) in x {
                    for (ky, cy) in y {
                        let k: Vec<u32> = kx.iter().zip(ky).map(|(p, q)| p + q).collect();
                        add_term(base, &mut out, &k, &base.mul(cx, cy));
                    }
                }
                Value::Poly(out)
            }
            (RingDescriptor::Loc { base, .. }, Value::Frac(x, i), Value::Frac(y, j)) => {
                Value::Frac(Box::new(base.mul(x, y)), i + j)
            }
            _ => panic!("value does not match ring descriptor"),
        }
    }

    pub fn pow(&self, a: &Value, e: u32) -> Value {
        let mut acc = self.one();
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn invert(&self, a: &Value) -> Result<Value> {
        match (self, a) {
            (RingDescriptor::Zmod { m }, Value::Int(x)) => inv_mod(*x, *m).map(Value::Int),
            (RingDescriptor::Poly { base, vars }, Value::Poly(map)) => {
                let zero = vec![0; vars.len()];
                if map.len() != 1 || !map.contains_key(&zero) {
                    return Err(Error::NotAUnit);
                }
                let c = base.invert(&map[&zero])?;
                Ok(Value::Poly(BTreeMap::from([(zero, c)])))
            }
            (RingDescriptor::Loc { base, denom }, Value::Frac(x, i)) => {
                let xi = base.invert(x)?;
                Ok(Value::Frac(Box::new(base.mul(&xi, &base.pow(denom, *i))), 0))
            }
            _ => panic!("value does not match ring descriptor"),
        }
    }

    pub fn variables(&self) -> &[String] {
        match self {
            RingDescriptor::Poly { vars, .. } => vars,
            _ => &[],
        }
    }

    pub fn to_json(&self) -> Json {
        match self {
            RingDescriptor::Zmod { m } => json!({"kind": "zmod", "m": m}),
            RingDescriptor::Poly { base, vars } => {
                json!({"kind": "poly", "base": base.to_json(), "vars": vars})
            }
            RingDescriptor::Loc { base, denom } => {
                json!({"kind": "loc", "base": base.to_json(), "denom": base.value_to_json(denom)})
            }
        }
    }

    pub fn from_json(j: &Json) -> Result<Ring> {
        let bad = |s: &str| Error::Malformed(format!("ring: {s}"));
        let kind = j.get("kind").and_then(Json::as_str).ok_or_else(|| bad("missing kind"))?;
        match kind {
            "zmod" => {
                let m = j.get("m").and_then(Json::as_u64).ok_or_else(|| bad("missing m"))?;
                zmod(m)
            }
            "poly" => {
                let base = Self::from_json(j.get("base").ok_or_else(|| bad("missing base"))?)?;
                let vars = j
                    .get("vars")
                    .and_then(Json::as_array)
                    .ok_or_else(|| bad("missing vars"))?
                    .iter()
                    .map(|v| v.as_str().map(str::to_string).ok_or_else(|| bad("variable name")))
                    .collect::<Result<Vec<_>>>()?;
                check_vars(&vars)?;
                Ok(Arc::new(RingDescriptor::Poly { base, vars }))
            }
            "loc" => {
                let base = Self::from_json(j.get("base").ok_or_else(|| bad("missing base"))?)?;
                let d = base.value_from_json(j.get("denom").ok_or_else(|| bad("missing denom"))?)?;
                if base.is_zero(&d) {
                    return Err(Error::BadDescriptor("zero denominator".into()));
                }
                Ok(Arc::new(RingDescriptor::Loc { base, denom: d }))
            }
            other => Err(bad(&format!("unknown kind {other}"))),
        }
    }

    pub fn value_to_json(&self, v: &Value) -> Json {
        match (self, v) {
            (RingDescriptor::Zmod { .. }, Value::Int(x)) => json!(x),
            (RingDescriptor::Poly { base, vars }, Value::Poly(map)) => Json::Array(
                map.iter()
                    .map(|(k, c)| {
                        let mono: serde_json::Map<String, Json> = vars
                            .iter()
                            .zip(k)
                            .filter(|(_, e)| **e > 0)
                            .map(|(name, e)| (name.clone(), json!(e)))
                            .collect();
                        json!([Json::Object(mono), base.value_to_json(c)])
                    })
                    .collect(),
            ),
            (RingDescriptor::Loc { base, .. }, Value::Frac(n, e)) => {
                json!({"num": base.value_to_json(n), "exp": e})
            }
            _ => panic!("value does not match ring descriptor"),
        }
    }

    pub fn value_from_json(&self, j: &Json) -> Result<Value> {
        let bad = |s: &str| Error::Malformed(format!("element: {s}"));
        match self {
            RingDescriptor::Zmod { m } => {
                let x = j.as_i64().ok_or_else(|| bad("expected integer"))?;
                Ok(Value::Int(modp(x as i128, *m)))
            }
            RingDescriptor::Poly { base, vars } => {
                if let Some(x) = j.as_i64() {
                    return Ok(self.from_int(x));
                }
                let terms = j.as_array().ok_or_else(|| bad("expected term list"))?;
                let mut out = BTreeMap::new();
                for t in terms {
                    let pair = t.as_array().filter(|p| p.len() == 2).ok_or_else(|| bad("term"))?;
                    let mono = pair[0].as_object().ok_or_else(|| bad("monomial"))?;
                    let mut k = vec![0u32; vars.len()];
                    for (name, e) in mono {
                        let idx = vars
                            .iter()
                            .position(|v| v == name)
                            .ok_or_else(|| Error::UnknownVariable(name.clone()))?;
                        k[idx] += e.as_u64().ok_or_else(|| bad("exponent"))? as u32;
                    }
                    let c = base.value_from_json(&pair[1])?;
                    add_term(base, &mut out, &k, &c);
                }
                Ok(Value::Poly(out))
            }
            RingDescriptor::Loc { base, .. } => {
                if j.is_object() {
                    let n = base.value_from_json(j.get("num").ok_or_else(|| bad("num"))?)?;
                    let e = j.get("exp").and_then(Json::as_u64).ok_or_else(|| bad("exp"))?;
                    Ok(Value::Frac(Box::new(n), e as u32))
                } else {
                    Ok(Value::Frac(Box::new(base.value_from_json(j)?), 0))
                }
            }
        }
    }

    fn fmt_value(&self, v: &Value, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self, v) {
            (RingDescriptor::Zmod { .. }, Value::Int(x)) => write!(f, "{x}"),
            (RingDescriptor::Poly { base, vars }, Value::Poly(map)) => {
                if map.is_empty() {
                    return write!(f, "0");
                }
                for (n, (k, c)) in map.iter().rev().enumerate() {
                    if n > 0 {
                        write!(f, " + ")?;
                    }
                    let constant = k.iter().all(|e| *e == 0);
                    let nested = !matches!(**base, RingDescriptor::Zmod { .. });
                    if constant || !base.eq_val(c, &base.one()) {
                        if nested {
                            write!(f, "(")?;
                        }
                        base.fmt_value(c, f)?;
                        if nested {
                            write!(f, ")")?;
                        }
                        if !constant {
                            write!(f, "*")?;
                        }
                    }
                    let mut first = true;
                    for (name, e) in vars.iter().zip(k) {
                        if *e == 0 {
                            continue;
                        }
                        if !first {
                            write!(f, "*")?;
                        }
                        first = false;
                        if *e == 1 {
                            write!(f, "{name}")?;
                        } else {
                            write!(f, "{name}^{e}")?;
                        }
                    }
                }
                Ok(())
            }
            (RingDescriptor::Loc { base, .. }, Value::Frac(n, e)) => {
                write!(f, "(")?;
                base.fmt_value(n, f)?;
                write!(f, ")/d^{e}")
            }
            _ => write!(f, "<malformed>"),
        }
    }
}

fn add_term(base: &RingDescriptor, out: &mut BTreeMap<Vec<u32>, Value>, k: &[u32], c: &Value) {
    if base.is_zero(c) {
        return;
    }
    match out.get_mut(k) {
        Some(old) => {
            let s = base.add(old, c);
            if base.is_zero(&s) {
                out.remove(k);
            } else {
                *old = s;
            }
        }
        None => {
            out.insert(k.to_vec(), c.clone());
        }
    }
}

fn inv_mod(x: u64, m: u64) -> Result<u64> {
    let (mut r0, mut r1) = (m as i128, x as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return Err(Error::NotAUnit);
    }
    Ok(modp(t0, m))
}

/// An element together with the ring it lives in.
#[derive(Clone, Debug)]
pub struct RingElement {
    pub ring: Ring,
    pub v: Value,
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.ring.eq_val(&self.v, &other.v)
    }
}

impl Eq for RingElement {}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.ring.fmt_value(&self.v, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
}

/// Checked arithmetic entry point; `Neg` ignores `y` beyond the ring check.
pub fn ring_arith(op: ArithOp, x: &RingElement, y: &RingElement) -> Result<RingElement> {
    if !same_ring(&x.ring, &y.ring) {
        return Err(Error::DescriptorMismatch);
    }
    Ok(match op {
        ArithOp::Add => x.add(y),
        ArithOp::Sub => x.sub(y),
        ArithOp::Mul => x.mul(y),
        ArithOp::Neg => x.neg(),
    })
}

pub fn invert_unit(x: &RingElement) -> Result<RingElement> {
    Ok(RingElement { ring: x.ring.clone(), v: x.ring.invert(&x.v)? })
}

pub fn half(ring: &Ring) -> Result<RingElement> {
    invert_unit(&RingElement::int(ring, 2)).map_err(|_| Error::TwoNotInvertible)
}

impl RingElement {
    pub fn new(ring: &Ring, v: Value) -> Result<Self> {
        if !ring.accepts(&v) {
            return Err(Error::DescriptorMismatch);
        }
        Ok(RingElement { ring: ring.clone(), v })
    }

    pub fn int(ring: &Ring, x: i64) -> Self {
        RingElement { ring: ring.clone(), v: ring.from_int(x) }
    }

    pub fn zero(ring: &Ring) -> Self {
        RingElement { ring: ring.clone(), v: ring.zero() }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::int(ring, 1)
    }

    fn with(&self, v: Value) -> Self {
        RingElement { ring: self.ring.clone(), v }
    }

    fn check(&self, other: &Self) {
        assert!(same_ring(&self.ring, &other.ring), "ring mismatch");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        self.with(self.ring.add(&self.v, &o.v))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check(o);
        self.with(self.ring.sub(&self.v, &o.v))
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        self.with(self.ring.mul(&self.v, &o.v))
    }

    pub fn neg(&self) -> Self {
        self.with(self.ring.neg(&self.v))
    }

    pub fn pow(&self, e: u32) -> Self {
        self.with(self.ring.pow(&self.v, e))
    }

    pub fn scale(&self, k: i64) -> Self {
        self.mul(&Self::int(&self.ring, k))
    }

    pub fn is_zero(&self) -> bool {
        self.ring.is_zero(&self.v)
    }

    pub fn is_one(&self) -> bool {
        self.ring.eq_val(&self.v, &self.ring.one())
    }

    /// The variable `name` of a polynomial ring, as an element.
    pub fn var(ring: &Ring, name: &str) -> Result<Self> {
        match &**ring {
            RingDescriptor::Poly { base, vars } => {
                let idx = vars
                    .iter()
                    .position(|v| v == name)
                    .ok_or_else(|| Error::UnknownVariable(name.into()))?;
                let mut k = vec![0; vars.len()];
                k[idx] = 1;
                Ok(RingElement { ring: ring.clone(), v: Value::Poly(BTreeMap::from([(k, base.one())])) })
            }
            _ => Err(Error::UnknownVariable(name.into())),
        }
    }

    /// Constant embedding of a base-ring element into the polynomial ring `ring`.
    pub fn embed(&self, ring: &Ring) -> Result<Self> {
        if same_ring(&self.ring, ring) {
            return Ok(self.clone());
        }
        match &**ring {
            RingDescriptor::Poly { base, vars } => {
                let inner = self.embed(base)?;
                let mut map = BTreeMap::new();
                if !inner.is_zero() {
                    map.insert(vec![0; vars.len()], inner.v);
                }
                Ok(RingElement { ring: ring.clone(), v: Value::Poly(map) })
            }
            RingDescriptor::Loc { base, .. } => {
                let inner = self.embed(base)?;
                Ok(RingElement { ring: ring.clone(), v: Value::Frac(Box::new(inner.v), 0) })
            }
            RingDescriptor::Zmod { .. } => Err(Error::DescriptorMismatch),
        }
    }

    /// Move into a polynomial ring over the same base whose variables include ours.
    pub fn lift(&self, ring: &Ring) -> Result<Self> {
        if same_ring(&self.ring, ring) {
            return Ok(self.clone());
        }
        if let (
            RingDescriptor::Poly { base: b1, vars: v1 },
            RingDescriptor::Poly { base: b2, vars: v2 },
            Value::Poly(map),
        ) = (&*self.ring, &**ring, &self.v)
        {
            if same_ring(b1, b2) {
                let pos = v1
                    .iter()
                    .map(|n| v2.iter().position(|m| m == n).ok_or_else(|| Error::UnknownVariable(n.clone())))
                    .collect::<Result<Vec<_>>>()?;
                let out = map
                    .iter()
                    .map(|(k, c)| {
                        let mut m = vec![0; v2.len()];
                        for (e, &p) in k.iter().zip(&pos) {
                            m[p] = *e;
                        }
                        (m, c.clone())
                    })
                    .collect();
                return Ok(RingElement { ring: ring.clone(), v: Value::Poly(out) });
            }
        }
        self.embed(ring)
    }

    /// Multiply the exponent of variable `var` by `k` in every monomial.
    pub fn inflate(&self, var: &str, k: u32) -> Result<Self> {
        match (&*self.ring, &self.v) {
            (RingDescriptor::Poly { vars, .. }, Value::Poly(map)) => {
                let idx = vars
                    .iter()
                    .position(|v| v == var)
                    .ok_or_else(|| Error::UnknownVariable(var.into()))?;
                let out = map
                    .iter()
                    .map(|(m, c)| {
                        let mut m = m.clone();
                        m[idx] *= k;
                        (m, c.clone())
                    })
                    .collect();
                Ok(self.with(Value::Poly(out)))
            }
            _ => Err(Error::UnknownVariable(var.into())),
        }
    }

    /// Evaluate bound variables; values may live in this ring or in its base.
    pub fn substitute(&self, bindings: &[(&str, RingElement)]) -> Result<Self> {
        let (base, vars, map) = match (&*self.ring, &self.v) {
            (RingDescriptor::Poly { base, vars }, Value::Poly(map)) => (base, vars, map),
            _ => {
                return match bindings.first() {
                    Some((name, _)) => Err(Error::UnknownVariable(name.to_string())),
                    None => Ok(self.clone()),
                }
            }
        };
        let mut idx = Vec::with_capacity(bindings.len());
        for (name, val) in bindings {
            let i = vars
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
            idx.push((i, val.embed(&self.ring)?));
        }
        let mut acc = RingElement::zero(&self.ring);
        for (m, c) in map {
            let mut kept = m.clone();
            let mut term = RingElement { ring: base.clone(), v: c.clone() }.embed(&self.ring)?;
            for (i, val) in &idx {
                term = term.mul(&val.pow(m[*i]));
                kept[*i] = 0;
            }
            let mono = RingElement {
                ring: self.ring.clone(),
                v: Value::Poly(BTreeMap::from([(kept, base.one())])),
            };
            acc = acc.add(&term.mul(&mono));
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> Json {
        self.ring.value_to_json(&self.v)
    }

    pub fn from_json(ring: &Ring, j: &Json) -> Result<Self> {
        Ok(RingElement { ring: ring.clone(), v: ring.value_from_json(j)? })
    }
}
