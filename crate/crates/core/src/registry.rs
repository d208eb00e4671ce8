//! Name-keyed registry of interchangeable strategies.

use std::sync::Arc;

use crate::error::{Error, Result};

pub struct Registry<T: ?Sized> {
    kind: &'static str,
    entries: Vec<(String, Arc<T>)>,
}

impl<T: ?Sized> Registry<T> {
    pub fn new(kind: &'static str) -> Self {
        Self { kind, entries: Vec::new() }
    }

    /// Registers `entry` under `name`, replacing any previous entry of that name.
    pub fn register(&mut self, name: impl Into<String>, entry: Arc<T>) {
        let name = name.into();
        match self.entries.iter_mut().find(|(n, _)| *n == name) {
            Some(slot) => slot.1 = entry,
            None => self.entries.push((name, entry)),
        }
    }

    pub fn get(&self, name: &str) -> Result<Arc<T>> {
        self.entries
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, e)| Arc::clone(e))
            .ok_or_else(|| Error::UnknownName { kind: self.kind, name: name.to_string() })
    }

    /// Names in registration order.
    pub fn names(&self) -> Vec<&str> {
        self.entries.iter().map(|(n, _)| n.as_str()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Arc<T>)> {
        self.entries.iter().map(|(n, e)| (n.as_str(), e))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    trait Greeter: Send + Sync {
        fn greet(&self) -> String;
    }
    struct En;
    struct Fr;
    impl Greeter for En {
        fn greet(&self) -> String {
            "hello".into()
        }
    }
    impl Greeter for Fr {
        fn greet(&self) -> String {
            "bonjour".into()
        }
    }

    #[test]
    fn lookup_and_replace() {
        let mut r: Registry<dyn Greeter> = Registry::new("greeter");
        r.register("en", Arc::new(En));
        r.register("fr", Arc::new(En));
        r.register("fr", Arc::new(Fr));
        assert_eq!(r.names(), vec!["en", "fr"]);
        assert_eq!(r.get("fr").unwrap().greet(), "bonjour");
        assert!(matches!(r.get("de"), Err(Error::UnknownName { kind: "greeter", .. })));
    }
}
