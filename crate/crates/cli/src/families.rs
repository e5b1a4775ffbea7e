//! Mapping from CLI flags to library families, with per-family default
//! intervals and metadata for provenance output.

use crate::{usage, CliError, FamilyArgs};
use randzeros::complex_zeros::VarianceGeneratingFunction;
use randzeros::ensembles::ClosedFormFamily;
use randzeros::kernel::Ensemble;
use randzeros::numerics::Interval;

const DIRICHLET_DEFAULT_TERMS: usize = 100_000;

/// A univariate family selectable on the command line.
pub enum Family {
    Closed(ClosedFormFamily, Option<usize>),
    Chebyshev { n: usize },
    SinExp,
}

impl Family {
    pub fn from_args(args: &FamilyArgs) -> Result<Family, CliError> {
        let need_n = || {
            args.n
                .ok_or_else(|| usage(format!("family {} needs --n", args.family)))
        };
        Ok(match args.family.as_str() {
            "kac" => Family::Closed(ClosedFormFamily::Kac { n: need_n()? }, None),
            "kostlan" => Family::Closed(ClosedFormFamily::Kostlan { n: need_n()? }, None),
            "power-series" => Family::Closed(ClosedFormFamily::PowerSeries, None),
            "correlated-power-series" => {
                let r = args
                    .r
                    .ok_or_else(|| usage("correlated-power-series needs --r"))?;
                Family::Closed(ClosedFormFamily::CorrelatedPowerSeries { r }, None)
            }
            "entire" => Family::Closed(ClosedFormFamily::Entire, None),
            "trig" => {
                let sigmas = args.sigma.clone().ok_or_else(|| usage("trig needs --sigma"))?;
                let nus = args.nu.clone().ok_or_else(|| usage("trig needs --nu"))?;
                if sigmas.len() != nus.len() || sigmas.is_empty() {
                    return Err(usage("--sigma and --nu need equal nonzero lengths"));
                }
                Family::Closed(ClosedFormFamily::TrigSum { sigmas, nus }, None)
            }
            "dirichlet" => Family::Closed(ClosedFormFamily::Dirichlet, args.terms),
            "chebyshev" => Family::Chebyshev { n: need_n()? },
            "sin-exp" => Family::SinExp,
            other => return Err(usage(format!("unknown family {other}"))),
        })
    }

    pub fn closed_form(&self) -> Option<ClosedFormFamily> {
        match self {
            Family::Closed(cf, _) => Some(cf.clone()),
            _ => None,
        }
    }

    pub fn ensemble(&self) -> Result<Ensemble, CliError> {
        Ok(match self {
            Family::Closed(ClosedFormFamily::Dirichlet, terms) => {
                Ensemble::dirichlet(terms.unwrap_or(DIRICHLET_DEFAULT_TERMS))?
            }
            Family::Closed(cf, _) => cf.ensemble()?,
            Family::Chebyshev { n } => Ensemble::chebyshev(*n),
            Family::SinExp => Ensemble::one_sin_expabs(),
        })
    }

    /// Default integration bounds, overridden by explicit endpoints.
    pub fn interval(&self, a: Option<f64>, b: Option<f64>) -> Result<Interval, CliError> {
        let (lo, hi) = match self {
            Family::Closed(ClosedFormFamily::Kac { .. }, _)
            | Family::Closed(ClosedFormFamily::Kostlan { .. }, _) => {
                (f64::NEG_INFINITY, f64::INFINITY)
            }
            Family::Closed(ClosedFormFamily::PowerSeries, _)
            | Family::Closed(ClosedFormFamily::CorrelatedPowerSeries { .. }, _) => {
                (-0.999, 0.999)
            }
            Family::Closed(ClosedFormFamily::Entire, _) => (-8.0, 8.0),
            Family::Closed(ClosedFormFamily::TrigSum { .. }, _) => {
                (0.0, 2.0 * std::f64::consts::PI)
            }
            Family::Closed(ClosedFormFamily::Dirichlet, _) => (0.75, 3.0),
            Family::Chebyshev { .. } => (-1.0 + 1e-9, 1.0 - 1e-9),
            Family::SinExp => (f64::NEG_INFINITY, f64::INFINITY),
        };
        let lo = a.unwrap_or(lo);
        let hi = b.unwrap_or(hi);
        if !(lo < hi) {
            return Err(usage(format!("need a < b, got [{lo}, {hi}]")));
        }
        Ok(Interval::new(lo, hi))
    }

    pub fn meta(&self) -> Vec<(String, String)> {
        match self {
            Family::Closed(cf, terms) => {
                let mut m = vec![("family".to_string(), closed_name(cf).to_string())];
                match cf {
                    ClosedFormFamily::Kac { n } | ClosedFormFamily::Kostlan { n } => {
                        m.push(("n".into(), n.to_string()));
                    }
                    ClosedFormFamily::CorrelatedPowerSeries { r } => {
                        m.push(("r".into(), r.to_string()));
                    }
                    ClosedFormFamily::TrigSum { sigmas, nus } => {
                        m.push(("sigma".into(), join(sigmas)));
                        m.push(("nu".into(), join(nus)));
                    }
                    ClosedFormFamily::PowerSeries => {
                        m.push(("truncation-delta".into(), "1e-3".into()));
                    }
                    ClosedFormFamily::Dirichlet => {
                        m.push((
                            "terms".into(),
                            terms.unwrap_or(DIRICHLET_DEFAULT_TERMS).to_string(),
                        ));
                    }
                    ClosedFormFamily::Entire => {}
                }
                m
            }
            Family::Chebyshev { n } => vec![
                ("family".into(), "chebyshev".into()),
                ("n".into(), n.to_string()),
            ],
            Family::SinExp => vec![("family".into(), "sin-exp".into())],
        }
    }
}

fn closed_name(cf: &ClosedFormFamily) -> &'static str {
    match cf {
        ClosedFormFamily::Kac { .. } => "kac",
        ClosedFormFamily::Kostlan { .. } => "kostlan",
        ClosedFormFamily::PowerSeries => "power-series",
        ClosedFormFamily::CorrelatedPowerSeries { .. } => "correlated-power-series",
        ClosedFormFamily::Entire => "entire",
        ClosedFormFamily::TrigSum { .. } => "trig",
        ClosedFormFamily::Dirichlet => "dirichlet",
    }
}

fn join(xs: &[f64]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Complex-coefficient variance families on the command line.
pub struct VgfFamily {
    vgf: VarianceGeneratingFunction,
    meta: Vec<(String, String)>,
}

impl VgfFamily {
    pub fn parse(
        name: &str,
        n: Option<usize>,
        order: Option<f64>,
        type_param: Option<f64>,
    ) -> Result<VgfFamily, CliError> {
        let need_n = || n.ok_or_else(|| usage(format!("family {name} needs --n")));
        match name {
            "kac-complex" => {
                let n = need_n()?;
                Ok(VgfFamily {
                    vgf: VarianceGeneratingFunction::KacComplex { n },
                    meta: vec![
                        ("family".into(), "kac-complex".into()),
                        ("n".into(), n.to_string()),
                    ],
                })
            }
            "kostlan-complex" => {
                let n = need_n()?;
                Ok(VgfFamily {
                    vgf: VarianceGeneratingFunction::KostlanComplex { n },
                    meta: vec![
                        ("family".into(), "kostlan-complex".into()),
                        ("n".into(), n.to_string()),
                    ],
                })
            }
            "entire-order-type" => {
                let order =
                    order.ok_or_else(|| usage("entire-order-type needs --order"))?;
                let type_param =
                    type_param.ok_or_else(|| usage("entire-order-type needs --type"))?;
                if !(order > 0.0 && type_param > 0.0) {
                    return Err(usage("--order and --type must be positive"));
                }
                Ok(VgfFamily {
                    vgf: VarianceGeneratingFunction::EntireOrderType { order, type_param },
                    meta: vec![
                        ("family".into(), "entire-order-type".into()),
                        ("order".into(), order.to_string()),
                        ("type".into(), type_param.to_string()),
                    ],
                })
            }
            other => Err(usage(format!("unknown complex family {other}"))),
        }
    }

    pub fn inner(&self) -> &VarianceGeneratingFunction {
        &self.vgf
    }

    pub fn meta(&self) -> Vec<(String, String)> {
        self.meta.clone()
    }
}
