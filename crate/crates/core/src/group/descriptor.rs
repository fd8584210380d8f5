use serde::{Deserialize, Serialize};

use super::{GroupError, GroupKind, GroupModel};

/// JSON form of a group model:
/// `{"kind": "free"|"abelian"|"klein"|"product", "rank": k, "factors": [d1, d2]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDescriptor {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factors: Option<Vec<GroupDescriptor>>,
}

impl GroupDescriptor {
    pub fn build(&self) -> Result<GroupModel, GroupError> {
        let bad = |msg: String| GroupError::InvalidDescriptor(msg);
        let rank = |name: &str| match self.rank {
            Some(k) if (1..=crate::word::MAX_RANK).contains(&k) => Ok(k),
            Some(k) => Err(bad(format!("{name} rank {k} out of range"))),
            None => Err(bad(format!("{name} group needs a rank"))),
        };
        let no_factors = || match &self.factors {
            Some(_) => Err(bad(format!("{} group takes no factors", self.kind))),
            None => Ok(()),
        };
        match self.kind.as_str() {
            "free" => {
                no_factors()?;
                Ok(GroupModel::free(rank("free")?))
            }
            "abelian" => {
                no_factors()?;
                Ok(GroupModel::free_abelian(rank("abelian")?))
            }
            "klein" => {
                no_factors()?;
                match self.rank {
                    None | Some(2) => Ok(GroupModel::klein_bottle()),
                    Some(k) => Err(bad(format!("klein group has rank 2, not {k}"))),
                }
            }
            "product" => {
                let factors = self
                    .factors
                    .as_ref()
                    .filter(|f| f.len() == 2)
                    .ok_or_else(|| bad("product needs exactly two factors".into()))?;
                let a = factors[0].build()?;
                let b = factors[1].build()?;
                let total = a.rank() + b.rank();
                if total > crate::word::MAX_RANK {
                    return Err(bad(format!("product rank {total} too large")));
                }
                if let Some(k) = self.rank {
                    if k != total {
                        return Err(bad(format!("product rank {k} does not match factors ({total})")));
                    }
                }
                Ok(GroupModel::direct_product(a, b))
            }
            other => Err(bad(format!("unknown group kind {other:?}"))),
        }
    }

    pub fn of(model: &GroupModel) -> GroupDescriptor {
        let simple = |kind: &str, rank| GroupDescriptor {
            kind: kind.into(),
            rank: Some(rank),
            factors: None,
        };
        match model.kind() {
            GroupKind::Free(k) => simple("free", *k),
            GroupKind::FreeAbelian(n) => simple("abelian", *n),
            GroupKind::KleinBottle => simple("klein", 2),
            GroupKind::DirectProduct(a, b) => GroupDescriptor {
                kind: "product".into(),
                rank: Some(model.rank()),
                factors: Some(vec![GroupDescriptor::of(a), GroupDescriptor::of(b)]),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_product_descriptor() {
        let d: GroupDescriptor = serde_json::from_str(
            r#"{"kind":"product","factors":[{"kind":"free","rank":2},{"kind":"abelian","rank":1}]}"#,
        )
        .unwrap();
        let m = d.build().unwrap();
        assert_eq!(m.rank(), 3);
        assert_eq!(m.to_string(), "(F2 x Z^1)");
        assert_eq!(GroupDescriptor::of(&m).build().unwrap(), m);
    }

    #[test]
    fn rejects_bad_descriptors() {
        for bad in [
            r#"{"kind":"free"}"#,
            r#"{"kind":"free","rank":0}"#,
            r#"{"kind":"torus","rank":2}"#,
            r#"{"kind":"klein","rank":3}"#,
            r#"{"kind":"product","factors":[{"kind":"free","rank":2}]}"#,
        ] {
            let d: GroupDescriptor = serde_json::from_str(bad).unwrap();
            assert!(d.build().is_err(), "{bad}");
        }
        assert!(serde_json::from_str::<GroupDescriptor>(r#"{"kind":"free","rank":2,"extra":1}"#).is_err());
    }
}
