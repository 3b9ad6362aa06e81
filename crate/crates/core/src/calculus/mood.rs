use std::fmt;

use serde::{Deserialize, Serialize};

/// One of the four quantified statement forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Mood {
    /// All X are Y
    A,
    /// No X are Y
    E,
    /// Some X are Y
    I,
    /// Some X are not Y
    O,
}

/// Binary feature value used by the quantity/polarity encoding of moods.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// (quantity, polarity) feature pair. Quantity is `Plus` for universal
/// statements, polarity is `Plus` for affirmative ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignPair {
    pub quantity: Sign,
    pub polarity: Sign,
}

impl fmt::Display for SignPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {})",
            self.quantity.symbol(),
            self.polarity.symbol()
        )
    }
}

impl Mood {
    pub const ALL: [Mood; 4] = [Mood::A, Mood::E, Mood::I, Mood::O];

    pub fn letter(self) -> char {
        match self {
            Mood::A => 'A',
            Mood::E => 'E',
            Mood::I => 'I',
            Mood::O => 'O',
        }
    }

    pub fn from_letter(c: char) -> Option<Mood> {
        match c.to_ascii_uppercase() {
            'A' => Some(Mood::A),
            'E' => Some(Mood::E),
            'I' => Some(Mood::I),
            'O' => Some(Mood::O),
            _ => None,
        }
    }

    pub fn is_universal(self) -> bool {
        matches!(self, Mood::A | Mood::E)
    }

    pub fn is_affirmative(self) -> bool {
        matches!(self, Mood::A | Mood::I)
    }

    /// I and E statements are unchanged by swapping their terms.
    pub fn is_symmetric(self) -> bool {
        matches!(self, Mood::I | Mood::E)
    }

    pub fn signs(self) -> SignPair {
        let sign = |b: bool| if b { Sign::Plus } else { Sign::Minus };
        SignPair {
            quantity: sign(self.is_universal()),
            polarity: sign(self.is_affirmative()),
        }
    }

    pub fn from_signs(signs: SignPair) -> Mood {
        match (signs.quantity, signs.polarity) {
            (Sign::Plus, Sign::Plus) => Mood::A,
            (Sign::Plus, Sign::Minus) => Mood::E,
            (Sign::Minus, Sign::Plus) => Mood::I,
            (Sign::Minus, Sign::Minus) => Mood::O,
        }
    }
}

impl fmt::Display for Mood {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_pairs_match_representation_table() {
        let expect = [
            (Mood::A, Sign::Plus, Sign::Plus),
            (Mood::E, Sign::Plus, Sign::Minus),
            (Mood::I, Sign::Minus, Sign::Plus),
            (Mood::O, Sign::Minus, Sign::Minus),
        ];
        for (mood, q, p) in expect {
            assert_eq!(
                mood.signs(),
                SignPair {
                    quantity: q,
                    polarity: p
                }
            );
        }
    }

    #[test]
    fn signs_are_a_bijection() {
        for mood in Mood::ALL {
            assert_eq!(Mood::from_signs(mood.signs()), mood);
            assert_eq!(Mood::from_letter(mood.letter()), Some(mood));
        }
        assert_eq!(Mood::from_letter('x'), None);
    }
}
