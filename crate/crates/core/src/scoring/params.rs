use crate::spans::{SpanConfig, SpanError};

/// Default span-count exponent `z` (= x + y with x = 0.25, y = 0.3).
pub const DEFAULT_Z: f64 = 0.55;
/// Default span-width exponent `x`.
pub const DEFAULT_X: f64 = 0.25;
pub const DEFAULT_K1: f64 = 1.2;
pub const DEFAULT_B: f64 = 0.75;
/// Boost given to a field named `title` when none is configured.
pub const DEFAULT_TITLE_BOOST: f64 = 2.0;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ParamError {
    #[error("k1 must be a finite value > 0, got {0}")]
    K1(f64),
    #[error("b must lie in [0, 1], got {0}")]
    B(f64),
    #[error("boost must be a finite value >= 0, got {0}")]
    Boost(f64),
    #[error("exponent {name} must be a finite value >= 0, got {value}")]
    Exponent { name: &'static str, value: f64 },
    #[error(transparent)]
    Window(#[from] SpanError),
}

fn check_b(b: f64) -> Result<(), ParamError> {
    if (0.0..=1.0).contains(&b) {
        Ok(())
    } else {
        Err(ParamError::B(b))
    }
}

fn check_exponent(name: &'static str, value: f64) -> Result<(), ParamError> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(ParamError::Exponent { name, value })
    }
}

/// `k1` saturation and `b` length normalization for the flat scorers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bm25Params {
    pub k1: f64,
    pub b: f64,
}

impl Bm25Params {
    pub fn new(k1: f64, b: f64) -> Result<Self, ParamError> {
        let params = Self { k1, b };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        if !(self.k1.is_finite() && self.k1 > 0.0) {
            return Err(ParamError::K1(self.k1));
        }
        check_b(self.b)
    }
}

impl Default for Bm25Params {
    fn default() -> Self {
        Self {
            k1: DEFAULT_K1,
            b: DEFAULT_B,
        }
    }
}

/// Per-field weighting: boost, length normalization and span exponents.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldParams {
    pub boost: f64,
    pub b: f64,
    pub z: f64,
    pub x: f64,
}

impl FieldParams {
    pub fn new(boost: f64, b: f64, z: f64, x: f64) -> Result<Self, ParamError> {
        let params = Self { boost, b, z, x };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        if !(self.boost.is_finite() && self.boost >= 0.0) {
            return Err(ParamError::Boost(self.boost));
        }
        check_b(self.b)?;
        check_exponent("z", self.z)?;
        check_exponent("x", self.x)
    }

    /// Built-in defaults for a field: `title` gets boost 2 and no length
    /// normalization, any other field boost 1 and the flat `b`. Exponents
    /// come from the flat span settings.
    pub fn default_for(field: &str, flat_b: f64, z: f64, x: f64) -> Self {
        if field == "title" {
            Self {
                boost: DEFAULT_TITLE_BOOST,
                b: 0.0,
                z,
                x,
            }
        } else {
            Self {
                boost: 1.0,
                b: flat_b,
                z,
                x,
            }
        }
    }
}

/// Span exponents and window for the flat Expanded Span scorer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EsParams {
    pub z: f64,
    pub x: f64,
    pub span: SpanConfig,
}

impl EsParams {
    pub fn new(z: f64, x: f64, max_gap: u32) -> Result<Self, ParamError> {
        let params = Self {
            z,
            x,
            span: SpanConfig::new(max_gap)?,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        check_exponent("z", self.z)?;
        check_exponent("x", self.x)
    }
}

impl Default for EsParams {
    fn default() -> Self {
        Self {
            z: DEFAULT_Z,
            x: DEFAULT_X,
            span: SpanConfig::default(),
        }
    }
}

/// Every parameter any of the four scorers needs, with `fields` aligned to
/// the index schema.
///
/// The fielded scorers take `k1` from `bm25` and the window `M` from `es`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScorerParams {
    pub bm25: Bm25Params,
    pub es: EsParams,
    pub fields: Vec<FieldParams>,
    /// Clamp negative idf values to zero. Off by default.
    pub clamp_negative_idf: bool,
}

impl ScorerParams {
    /// Defaults for every field of `schema`.
    pub fn defaults_for(schema: &[String]) -> Self {
        let bm25 = Bm25Params::default();
        let es = EsParams::default();
        let fields = schema
            .iter()
            .map(|f| FieldParams::default_for(f, bm25.b, es.z, es.x))
            .collect();
        Self {
            bm25,
            es,
            fields,
            clamp_negative_idf: false,
        }
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        self.bm25.validate()?;
        self.es.validate()?;
        self.fields.iter().try_for_each(FieldParams::validate)
    }
}
