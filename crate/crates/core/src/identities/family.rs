use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value as Json};

use crate::error::{Error, Result};
use num_traits::Zero;

use crate::exactnum::{rat_to_string, BigRat, QFrac, QPoly, Ring};

/// Identity families in the catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Dyson,
    QDyson,
    Morris,
    QMorris,
    Aomoto,
    QAomoto,
    KadellMain,
    KadellCorollary,
    KadellSum,
    Sills,
    Forrester,
    QForrester,
    AomotoForrester,
    Xin,
    XinHr,
}

impl Family {
    pub const ALL: [Family; 15] = [
        Family::Dyson,
        Family::QDyson,
        Family::Morris,
        Family::QMorris,
        Family::Aomoto,
        Family::QAomoto,
        Family::KadellMain,
        Family::KadellCorollary,
        Family::KadellSum,
        Family::Sills,
        Family::Forrester,
        Family::QForrester,
        Family::AomotoForrester,
        Family::Xin,
        Family::XinHr,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Dyson => "dyson",
            Family::QDyson => "q_dyson",
            Family::Morris => "morris",
            Family::QMorris => "q_morris",
            Family::Aomoto => "aomoto",
            Family::QAomoto => "q_aomoto",
            Family::KadellMain => "kadell_main",
            Family::KadellCorollary => "kadell_corollary",
            Family::KadellSum => "kadell_sum",
            Family::Sills => "sills",
            Family::Forrester => "forrester",
            Family::QForrester => "q_forrester",
            Family::AomotoForrester => "aomoto_forrester",
            Family::Xin => "xin",
            Family::XinHr => "xin_hr",
        }
    }

    /// Whether values are polynomials in `q` rather than rationals.
    pub fn is_q(self) -> bool {
        matches!(
            self,
            Family::QDyson | Family::QMorris | Family::QAomoto | Family::KadellMain | Family::QForrester | Family::AomotoForrester
        )
    }

    /// Whether the parameter `a` is a vector (one entry per variable).
    pub fn has_vector_a(self) -> bool {
        matches!(
            self,
            Family::Dyson
                | Family::QDyson
                | Family::KadellMain
                | Family::KadellCorollary
                | Family::KadellSum
                | Family::Sills
                | Family::Xin
                | Family::XinHr
        )
    }

    /// Whether an interpolation pipeline exists for the family.
    pub fn has_interp(self) -> bool {
        !matches!(
            self,
            Family::KadellCorollary | Family::KadellSum | Family::Sills | Family::XinHr
        )
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::bad(format!("unknown family '{s}'")))
    }
}

/// Which evaluation paths to run for the left-hand side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Brute,
    Interp,
    #[default]
    Both,
    RhsOnly,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Brute => "brute",
            Method::Interp => "interp",
            Method::Both => "both",
            Method::RhsOnly => "rhs_only",
        }
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Method::Brute, Method::Interp, Method::Both, Method::RhsOnly]
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::bad(format!("unknown method '{s}'")))
    }
}

/// Named integer parameters. Unused fields stay `None`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Params {
    pub n: Option<usize>,
    pub n0: Option<usize>,
    pub m: Option<usize>,
    /// Scalar `a` is stored as a one-element vector.
    pub a: Option<Vec<u32>>,
    pub b: Option<u32>,
    pub k: Option<u32>,
    pub r: Option<usize>,
    pub s: Option<usize>,
    /// The index set `M` (1-based) of the Kadell corollary; defaults to `{1..m}`.
    pub set: Option<Vec<usize>>,
}

/// Parameters of a scalar-`a` family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScalarParams {
    pub n: usize,
    pub n0: usize,
    pub m: usize,
    pub a: u32,
    pub b: u32,
    pub k: u32,
}

impl Params {
    fn need<T: Copy>(v: Option<T>, name: &str) -> Result<T> {
        v.ok_or_else(|| Error::bad(format!("missing parameter '{name}'")))
    }

    pub fn vector_a(&self) -> Result<&[u32]> {
        match &self.a {
            Some(a) if !a.is_empty() => Ok(a),
            _ => Err(Error::bad("missing parameter 'a'")),
        }
    }

    pub fn scalar_a(&self) -> Result<u32> {
        match self.a.as_deref() {
            Some([a]) => Ok(*a),
            Some(_) => Err(Error::bad("parameter 'a' must be a single integer")),
            None => Err(Error::bad("missing parameter 'a'")),
        }
    }

    pub fn get_m(&self) -> Result<usize> {
        Self::need(self.m, "m")
    }

    pub fn get_r(&self) -> Result<usize> {
        Self::need(self.r, "r")
    }

    pub fn get_s(&self) -> Result<usize> {
        Self::need(self.s, "s")
    }

    /// Scalar parameters with family defaults: `n0 = n` and `m = 0` where the
    /// family has no such parameter.
    pub fn scalars(&self, family: Family) -> Result<ScalarParams> {
        let n = Self::need(self.n, "n")?;
        if n == 0 {
            return Err(Error::bad("n must be positive"));
        }
        let (n0, m) = match family {
            Family::Morris | Family::QMorris => (n, 0),
            Family::Aomoto | Family::QAomoto => (n, Self::need(self.m, "m")?),
            Family::Forrester | Family::QForrester => (Self::need(self.n0, "n0")?, 0),
            Family::AomotoForrester => (Self::need(self.n0, "n0")?, Self::need(self.m, "m")?),
            _ => return Err(Error::bad(format!("{family} has no scalar parameters"))),
        };
        if n0 > n || m > n {
            return Err(Error::bad("need n0 <= n and m <= n"));
        }
        Ok(ScalarParams {
            n,
            n0,
            m,
            a: self.scalar_a()?,
            b: Self::need(self.b, "b")?,
            k: Self::need(self.k, "k")?,
        })
    }

    /// Kadell index set `M`, validated against `n` and defaulting to `{1..m}`.
    pub fn kadell_set(&self, n: usize) -> Result<Vec<usize>> {
        let set = match &self.set {
            Some(set) => set.clone(),
            None => (1..=self.get_m()?).collect(),
        };
        let mut sorted = set.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != set.len() || sorted.iter().any(|&s| s == 0 || s > n) {
            return Err(Error::bad("M must be a set of distinct indices in 1..=n"));
        }
        if let Some(m) = self.m {
            if m != sorted.len() {
                return Err(Error::bad("m must equal |M|"));
            }
        }
        Ok(sorted)
    }

    /// JSON object with sorted keys; scalar `a` is written as an integer.
    pub fn to_json(&self, family: Family) -> Json {
        let mut map = Map::new();
        let mut put = |k: &str, v: Json| {
            map.insert(k.to_string(), v);
        };
        if let Some(v) = self.n {
            put("n", json!(v));
        }
        if let Some(v) = self.n0 {
            put("n0", json!(v));
        }
        if let Some(v) = self.m {
            put("m", json!(v));
        }
        if let Some(a) = &self.a {
            match (family.has_vector_a(), a.as_slice()) {
                (false, [x]) => put("a", json!(x)),
                _ => put("a", json!(a)),
            }
        }
        if let Some(v) = self.b {
            put("b", json!(v));
        }
        if let Some(v) = self.k {
            put("k", json!(v));
        }
        if let Some(v) = self.r {
            put("r", json!(v));
        }
        if let Some(v) = self.s {
            put("s", json!(v));
        }
        if let Some(v) = &self.set {
            put("M", json!(v));
        }
        Json::Object(map)
    }

    pub fn from_json(v: &Json) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::bad("params must be an object"))?;
        let uint = |key: &str| -> Result<Option<u64>> {
            match obj.get(key) {
                None | Some(Json::Null) => Ok(None),
                Some(x) => x
                    .as_u64()
                    .map(Some)
                    .ok_or_else(|| Error::bad(format!("parameter '{key}' must be a nonnegative integer"))),
            }
        };
        let small = |key: &str| -> Result<Option<u32>> {
            uint(key)?
                .map(|x| u32::try_from(x).map_err(|_| Error::bad(format!("parameter '{key}' too large"))))
                .transpose()
        };
        let list = |key: &str| -> Result<Option<Vec<u64>>> {
            match obj.get(key) {
                None | Some(Json::Null) => Ok(None),
                Some(Json::Array(xs)) => xs
                    .iter()
                    .map(|x| {
                        x.as_u64()
                            .ok_or_else(|| Error::bad(format!("parameter '{key}' must hold nonnegative integers")))
                    })
                    .collect::<Result<Vec<_>>>()
                    .map(Some),
                Some(x) => x
                    .as_u64()
                    .map(|v| Some(vec![v]))
                    .ok_or_else(|| Error::bad(format!("parameter '{key}' must be an integer or a list"))),
            }
        };
        for key in obj.keys() {
            if !["n", "n0", "m", "a", "b", "k", "r", "s", "M"].contains(&key.as_str()) {
                return Err(Error::bad(format!("unknown parameter '{key}'")));
            }
        }
        let a = list("a")?
            .map(|xs| {
                xs.into_iter()
                    .map(|x| u32::try_from(x).map_err(|_| Error::bad("parameter 'a' too large")))
                    .collect::<Result<Vec<_>>>()
            })
            .transpose()?;
        Ok(Params {
            n: small("n")?.map(|x| x as usize),
            n0: small("n0")?.map(|x| x as usize),
            m: small("m")?.map(|x| x as usize),
            a,
            b: small("b")?,
            k: small("k")?,
            r: small("r")?.map(|x| x as usize),
            s: small("s")?.map(|x| x as usize),
            set: list("M")?.map(|xs| xs.into_iter().map(|x| x as usize).collect()),
        })
    }
}

/// The unit of verification: a family, its parameters and the requested evaluation paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCase {
    pub family: Family,
    pub params: Params,
    pub method: Method,
}

impl IdentityCase {
    pub fn new(family: Family, params: Params, method: Method) -> Self {
        IdentityCase { family, params, method }
    }

    pub fn to_json(&self) -> Json {
        json!({
            "family": self.family.name(),
            "params": self.params.to_json(self.family),
            "method": self.method.name(),
        })
    }

    pub fn from_json(v: &Json) -> Result<Self> {
        let family: Family = v
            .get("family")
            .and_then(Json::as_str)
            .ok_or_else(|| Error::bad("case needs a 'family' string"))?
            .parse()?;
        let params = Params::from_json(v.get("params").unwrap_or(&json!({})))?;
        let method = match v.get("method").and_then(Json::as_str) {
            Some(m) => m.parse()?,
            None => Method::default(),
        };
        Ok(IdentityCase { family, params, method })
    }
}

/// Exact value of a constant term: a rational for plain families, a
/// polynomial in `q` for q-families. A closed form evaluated outside its
/// proven range may be a proper rational function of `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CtValue {
    Rat(BigRat),
    Poly(QPoly),
    Frac(QFrac),
}

impl CtValue {
    pub fn to_json(&self) -> Json {
        match self {
            CtValue::Rat(r) => r.to_json(),
            CtValue::Poly(p) => p.to_json(),
            CtValue::Frac(f) => f.to_json(),
        }
    }

    /// Value at `q = 1`; `None` at a pole.
    pub fn at_one(&self) -> Option<BigRat> {
        match self {
            CtValue::Rat(r) => Some(r.clone()),
            CtValue::Poly(p) => Some(p.eval_at_one()),
            CtValue::Frac(f) => {
                let den = f.den().eval_at_one();
                (!den.is_zero()).then(|| f.num().eval_at_one() / den)
            }
        }
    }

    pub fn as_poly(&self) -> Option<&QPoly> {
        match self {
            CtValue::Poly(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_rat(&self) -> Option<&BigRat> {
        match self {
            CtValue::Rat(r) => Some(r),
            _ => None,
        }
    }
}

impl fmt::Display for CtValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CtValue::Rat(r) => f.write_str(&rat_to_string(r)),
            CtValue::Poly(p) => write!(f, "{p}"),
            CtValue::Frac(x) => write!(f, "{x}"),
        }
    }
}

impl From<BigRat> for CtValue {
    fn from(r: BigRat) -> Self {
        CtValue::Rat(r)
    }
}

impl From<QPoly> for CtValue {
    fn from(p: QPoly) -> Self {
        CtValue::Poly(p)
    }
}
