use serde::{Deserialize, Serialize};

use super::{OrderError, OrderKind, OrderOracle, Surd};
use crate::group::{Factor, GroupModel};

/// JSON form of an order:
/// `{"name": ..., "kind": "magnus"|"hyperplane"|"lex_pair"|"klein",
///   "weights": [[p, q], ...], "leading": d, "trailing": d, "leading_factor": 0|1}`.
///
/// `leading_factor` names the product factor the leading order lives on
/// (default 0).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrderDescriptor {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<Surd>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leading: Option<Box<OrderDescriptor>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trailing: Option<Box<OrderDescriptor>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leading_factor: Option<usize>,
}

impl OrderDescriptor {
    pub fn simple(kind: &str) -> OrderDescriptor {
        OrderDescriptor {
            name: None,
            kind: kind.to_string(),
            weights: None,
            leading: None,
            trailing: None,
            leading_factor: None,
        }
    }

    pub fn build(&self, model: &GroupModel) -> Result<OrderOracle, OrderError> {
        let bad = |msg: &str| OrderError::InvalidDescriptor(msg.to_string());
        let plain = self.leading.is_none() && self.trailing.is_none() && self.leading_factor.is_none();
        let oracle = match self.kind.as_str() {
            "magnus" | "klein" if !plain || self.weights.is_some() => {
                return Err(bad("magnus and klein orders take no parameters"))
            }
            "magnus" => OrderOracle::magnus(model)?,
            "klein" => OrderOracle::klein(model)?,
            "hyperplane" => {
                if !plain {
                    return Err(bad("hyperplane order takes only weights"));
                }
                let weights = self.weights.clone().ok_or_else(|| bad("hyperplane order needs weights"))?;
                OrderOracle::hyperplane(model, weights)?
            }
            "lex_pair" => {
                if self.weights.is_some() {
                    return Err(bad("lex_pair takes no weights"));
                }
                let factor = match self.leading_factor.unwrap_or(0) {
                    0 => Factor::First,
                    1 => Factor::Second,
                    _ => return Err(bad("leading_factor must be 0 or 1")),
                };
                let (Some(lead_model), Some(trail_model)) = (model.factor(factor), model.factor(factor.other())) else {
                    return Err(bad("lex_pair needs a product group"));
                };
                let leading = self.leading.as_ref().ok_or_else(|| bad("lex_pair needs a leading order"))?;
                let trailing = self.trailing.as_ref().ok_or_else(|| bad("lex_pair needs a trailing order"))?;
                OrderOracle::lex_pair(model, leading.build(lead_model)?, trailing.build(trail_model)?, factor)?
            }
            other => return Err(OrderError::InvalidDescriptor(format!("unknown order kind {other:?}"))),
        };
        Ok(match &self.name {
            Some(name) => oracle.with_name(name.clone()),
            None => oracle,
        })
    }

    /// Descriptor of a built oracle; `None` for custom sign functions.
    pub fn of(o: &OrderOracle) -> Option<OrderDescriptor> {
        let mut d = match o.kind() {
            OrderKind::Magnus => OrderDescriptor::simple("magnus"),
            OrderKind::Klein => OrderDescriptor::simple("klein"),
            OrderKind::Hyperplane(w) => OrderDescriptor {
                weights: Some(w.clone()),
                ..OrderDescriptor::simple("hyperplane")
            },
            OrderKind::LexPair {
                leading,
                trailing,
                leading_factor,
            } => OrderDescriptor {
                leading: Some(Box::new(OrderDescriptor::of(leading)?)),
                trailing: Some(Box::new(OrderDescriptor::of(trailing)?)),
                leading_factor: Some(if *leading_factor == Factor::First { 0 } else { 1 }),
                ..OrderDescriptor::simple("lex_pair")
            },
            OrderKind::Custom(_) => return None,
        };
        d.name = Some(o.name().to_string());
        Some(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupDescriptor;
    use crate::order::Sign;

    fn product() -> GroupModel {
        serde_json::from_str::<GroupDescriptor>(
            r#"{"kind":"product","factors":[{"kind":"free","rank":2},{"kind":"abelian","rank":1}]}"#,
        )
        .unwrap()
        .build()
        .unwrap()
    }

    #[test]
    fn builds_z_leading_lex_pair() {
        let d: OrderDescriptor = serde_json::from_str(
            r#"{"name":"z-first","kind":"lex_pair","leading_factor":1,
                "leading":{"kind":"hyperplane","weights":[[1,0]]},
                "trailing":{"kind":"magnus"}}"#,
        )
        .unwrap();
        let m = product();
        let o = d.build(&m).unwrap();
        assert_eq!(o.name(), "z-first");
        assert_eq!(o.cofinal_central().unwrap().to_string(), "c");
        assert_eq!(o.sign(&m.parse_element("Ac").unwrap()), Sign::Positive);
        let round = OrderDescriptor::of(&o).unwrap().build(&m).unwrap();
        assert_eq!(round.name(), o.name());
    }

    #[test]
    fn rejects_mismatches() {
        let f2 = GroupModel::free(2);
        let z2 = GroupModel::free_abelian(2);
        let parse = |s: &str| serde_json::from_str::<OrderDescriptor>(s).unwrap();
        assert!(parse(r#"{"kind":"klein"}"#).build(&f2).is_err());
        assert!(parse(r#"{"kind":"hyperplane"}"#).build(&z2).is_err());
        assert!(matches!(
            parse(r#"{"kind":"hyperplane","weights":[[0,0],[0,0]]}"#).build(&z2),
            Err(OrderError::AllZeroWeights)
        ));
        assert!(parse(r#"{"kind":"hyperplane","weights":[[1,0]]}"#).build(&z2).is_err());
        assert!(parse(r#"{"kind":"lex_pair","leading":{"kind":"magnus"},"trailing":{"kind":"magnus"}}"#)
            .build(&f2)
            .is_err());
        assert!(serde_json::from_str::<OrderDescriptor>(r#"{"kind":"magnus","bogus":true}"#).is_err());
    }
}
