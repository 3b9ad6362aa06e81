use super::{CalculusError, Mood, Schema, Statement};

/// Which of the two original premises was replaced by a chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PremiseSlot {
    First,
    Second,
}

impl PremiseSlot {
    pub fn index(self) -> usize {
        match self {
            PremiseSlot::First => 0,
            PremiseSlot::Second => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainExpansion<T> {
    pub premises: Vec<Statement<T>>,
    /// The replaced premise as it appeared before expansion.
    pub replaced: Statement<T>,
    pub slot: PremiseSlot,
}

/// Replaces the first `A` premise `All x are y` by the chain
/// `All x are t1, All t1 are t2, .., All t(n-1) are y` of `n` statements
/// through `n - 1` auxiliary terms. `n = 1` leaves the premises unchanged.
pub fn expand_chain<T: Clone + PartialEq>(
    schema: Schema,
    terms: &[T; 3],
    aux: &[T],
    n: usize,
) -> Result<ChainExpansion<T>, CalculusError> {
    if !(1..=3).contains(&n) {
        return Err(CalculusError::InvalidChainLength(n));
    }
    let slot = if schema.mood1 == Mood::A {
        PremiseSlot::First
    } else if schema.mood2 == Mood::A {
        PremiseSlot::Second
    } else {
        return Err(CalculusError::NotChainEligible(schema.code()));
    };
    let aux = aux
        .get(..n - 1)
        .ok_or(CalculusError::InsufficientAuxTerms { needed: n - 1 })?;
    for (i, t) in aux.iter().enumerate() {
        if terms.contains(t) || aux[..i].contains(t) {
            return Err(CalculusError::DuplicateTerms);
        }
    }

    let original = schema.premises_of(terms)?;
    let replaced = original[slot.index()].clone();
    let mut links: Vec<T> = Vec::with_capacity(n + 1);
    links.push(replaced.subject.clone());
    links.extend(aux.iter().cloned());
    links.push(replaced.object.clone());
    let chain = links.windows(2).map(|w| Statement {
        mood: Mood::A,
        subject: w[0].clone(),
        object: w[1].clone(),
    });

    let mut premises = Vec::with_capacity(n + 1);
    match slot {
        PremiseSlot::First => {
            premises.extend(chain);
            premises.push(original[1].clone());
        }
        PremiseSlot::Second => {
            premises.push(original[0].clone());
            premises.extend(chain);
        }
    }
    Ok(ChainExpansion {
        premises,
        replaced,
        slot,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn render(e: &ChainExpansion<&str>) -> Vec<String> {
        e.premises.iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn ae1_three_premises() {
        let s: Schema = "AE1".parse().unwrap();
        let e = expand_chain(s, &["a", "b", "c"], &["x1"], 2).unwrap();
        assert_eq!(render(&e), ["All a are x1", "All x1 are b", "No b are c"]);
        assert_eq!(e.slot, PremiseSlot::First);
    }

    #[test]
    fn identity_for_length_one() {
        let s: Schema = "AE1".parse().unwrap();
        let e = expand_chain(s, &["a", "b", "c"], &[], 1).unwrap();
        let orig: Vec<String> = s
            .premises_of(&["a", "b", "c"])
            .unwrap()
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(render(&e), orig);
    }

    #[test]
    fn second_premise_replaced_when_first_is_not_a() {
        let s: Schema = "EA3".parse().unwrap();
        let e = expand_chain(s, &["a", "b", "c"], &["x1", "x2"], 3).unwrap();
        assert_eq!(
            render(&e),
            [
                "No a are b",
                "All c are x1",
                "All x1 are x2",
                "All x2 are b"
            ]
        );
        assert_eq!(e.slot, PremiseSlot::Second);
    }

    #[test]
    fn errors() {
        let ie: Schema = "IE1".parse().unwrap();
        assert!(matches!(
            expand_chain(ie, &["a", "b", "c"], &["x"], 2),
            Err(CalculusError::NotChainEligible(_))
        ));
        let aa: Schema = "AA1".parse().unwrap();
        assert!(matches!(
            expand_chain(aa, &["a", "b", "c"], &[], 4),
            Err(CalculusError::InvalidChainLength(4))
        ));
        assert!(matches!(
            expand_chain(aa, &["a", "b", "c"], &["x"], 3),
            Err(CalculusError::InsufficientAuxTerms { needed: 2 })
        ));
        assert!(matches!(
            expand_chain(aa, &["a", "b", "c"], &["b"], 2),
            Err(CalculusError::DuplicateTerms)
        ));
    }
}
