//! The fourteen topic categories a verse can carry.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Main topic category of a verse.
///
/// `General` is reserved for verses that carry no other category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Category {
    HereafterUnseens,
    StoriesOfProphets,
    Disbelievers,
    ShariaLaw,
    Jihad,
    UniverseCreation,
    Worship,
    BeliefBelievers,
    AboutQuran,
    Muhammad,
    God,
    Sins,
    HumanBeing,
    General,
}

impl Category {
    pub const ALL: [Category; 14] = [
        Category::HereafterUnseens,
        Category::StoriesOfProphets,
        Category::Disbelievers,
        Category::ShariaLaw,
        Category::Jihad,
        Category::UniverseCreation,
        Category::Worship,
        Category::BeliefBelievers,
        Category::AboutQuran,
        Category::Muhammad,
        Category::God,
        Category::Sins,
        Category::HumanBeing,
        Category::General,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Category::HereafterUnseens => "HereafterUnseens",
            Category::StoriesOfProphets => "StoriesOfProphets",
            Category::Disbelievers => "Disbelievers",
            Category::ShariaLaw => "ShariaLaw",
            Category::Jihad => "Jihad",
            Category::UniverseCreation => "UniverseCreation",
            Category::Worship => "Worship",
            Category::BeliefBelievers => "BeliefBelievers",
            Category::AboutQuran => "AboutQuran",
            Category::Muhammad => "Muhammad",
            Category::God => "God",
            Category::Sins => "Sins",
            Category::HumanBeing => "HumanBeing",
            Category::General => "General",
        }
    }

    /// Display label as used in published category tables.
    pub fn label(self) -> &'static str {
        match self {
            Category::HereafterUnseens => "Hereafter & Unseens",
            Category::StoriesOfProphets => "Stories of Prophets",
            Category::Disbelievers => "Disbelievers",
            Category::ShariaLaw => "Sharia Law",
            Category::Jihad => "Jihad",
            Category::UniverseCreation => "Universe & Creation",
            Category::Worship => "Worship",
            Category::BeliefBelievers => "Belief & Believers",
            Category::AboutQuran => "About Quran",
            Category::Muhammad => "Muhammad",
            Category::God => "God",
            Category::Sins => "Sins",
            Category::HumanBeing => "Human Being",
            Category::General => "General",
        }
    }

    fn bit(self) -> u16 {
        1 << (self as u16)
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown category `{0}`")]
pub struct UnknownCategory(pub String);

impl FromStr for Category {
    type Err = UnknownCategory;

    /// Accepts the identifier form (`ShariaLaw`) and the table label form
    /// (`Sharia Law`, `Hereafter & Unseens`), case-insensitively.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key: String = s
            .chars()
            .filter(|c| c.is_alphanumeric())
            .flat_map(char::to_lowercase)
            .collect();
        Category::ALL
            .into_iter()
            .find(|c| c.name().to_lowercase() == key)
            .ok_or_else(|| UnknownCategory(s.trim().to_string()))
    }
}

impl Serialize for Category {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for Category {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A set of categories stored as a 14-bit mask.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct CategorySet(u16);

impl CategorySet {
    pub const fn empty() -> Self {
        CategorySet(0)
    }

    pub fn general() -> Self {
        CategorySet(Category::General.bit())
    }

    pub fn insert(&mut self, category: Category) {
        self.0 |= category.bit();
    }

    pub fn contains(self, category: Category) -> bool {
        self.0 & category.bit() != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Categories in canonical order.
    pub fn iter(self) -> impl Iterator<Item = Category> {
        Category::ALL.into_iter().filter(move |c| self.contains(*c))
    }

    /// Semicolon-joined identifiers, the form used in tabular files.
    pub fn to_field(self) -> String {
        self.iter().map(Category::name).collect::<Vec<_>>().join(";")
    }

    pub fn parse_field(field: &str) -> Result<Self, UnknownCategory> {
        field
            .split(';')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(str::parse)
            .collect()
    }
}

impl FromIterator<Category> for CategorySet {
    fn from_iter<I: IntoIterator<Item = Category>>(iter: I) -> Self {
        let mut set = CategorySet::empty();
        for c in iter {
            set.insert(c);
        }
        set
    }
}

impl Serialize for CategorySet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for CategorySet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let items = Vec::<Category>::deserialize(deserializer)?;
        Ok(items.into_iter().collect())
    }
}
