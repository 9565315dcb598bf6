use std::fmt;
use std::marker::PhantomData;

use serde::de::{MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::linalg::{Matrix, Vector};

/// Per-node data keyed by node name, in insertion order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeMap<T> {
    entries: Vec<(String, T)>,
}

impl<T> NodeMap<T> {
    pub fn new() -> Self {
        NodeMap { entries: Vec::new() }
    }

    pub fn insert(&mut self, name: impl Into<String>, value: T) {
        let name = name.into();
        match self.entries.iter_mut().find(|(n, _)| *n == name) {
            Some(slot) => slot.1 = value,
            None => self.entries.push((name, value)),
        }
    }

    pub fn get(&self, name: &str) -> Option<&T> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    pub fn get_mut(&mut self, name: &str) -> Option<&mut T> {
        self.entries.iter_mut().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &T)> {
        self.entries.iter().map(|(n, v)| (n.as_str(), v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Keeps only the entries whose names satisfy `keep`.
    pub fn filtered(&self, keep: impl Fn(&str) -> bool) -> NodeMap<T>
    where
        T: Clone,
    {
        NodeMap {
            entries: self.entries.iter().filter(|(n, _)| keep(n)).cloned().collect(),
        }
    }
}

impl<T> Default for NodeMap<T> {
    fn default() -> Self {
        NodeMap::new()
    }
}

impl<T> FromIterator<(String, T)> for NodeMap<T> {
    fn from_iter<I: IntoIterator<Item = (String, T)>>(iter: I) -> Self {
        let mut map = NodeMap::new();
        for (k, v) in iter {
            map.insert(k, v);
        }
        map
    }
}

impl<T: Serialize> Serialize for NodeMap<T> {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let mut map = ser.serialize_map(Some(self.entries.len()))?;
        for (k, v) in &self.entries {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl<'de, T: Deserialize<'de>> Deserialize<'de> for NodeMap<T> {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        struct MapVisitor<T>(PhantomData<T>);

        impl<'de, T: Deserialize<'de>> Visitor<'de> for MapVisitor<T> {
            type Value = NodeMap<T>;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map from node names to certificate entries")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<Self::Value, A::Error> {
                let mut out = NodeMap::new();
                while let Some((k, v)) = access.next_entry::<String, T>()? {
                    out.insert(k, v);
                }
                Ok(out)
            }
        }

        de.deserialize_map(MapVisitor(PhantomData))
    }
}

/// Positive vector `v_i` per node, defining `V_i(x) = max_l x_l / (v_i)_l`.
pub type ConicCertificate = NodeMap<Vector>;

/// Symmetric positive-definite matrix `P_i` per node.
pub type EllipsoidalCertificate = NodeMap<Matrix>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Conic(ConicCertificate),
    Ellipsoidal(EllipsoidalCertificate),
}
