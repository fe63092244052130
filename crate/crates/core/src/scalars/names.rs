/// Display names for the formal parameters.
///
/// Parameter `k` (zero-based) prints as the `k`-th configured name, or as
/// `t{k+1}` when no name is configured for it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParamNames {
    names: Vec<String>,
}

impl ParamNames {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        ParamNames {
            names: names.into_iter().map(Into::into).collect(),
        }
    }

    pub fn name(&self, k: usize) -> String {
        match self.names.get(k) {
            Some(n) => n.clone(),
            None => format!("t{}", k + 1),
        }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn is_default(&self) -> bool {
        self.names.is_empty()
    }

    /// Resolves an identifier to a parameter index.
    pub fn lookup(&self, ident: &str) -> Option<usize> {
        if let Some(k) = self.names.iter().position(|n| n == ident) {
            return Some(k);
        }
        let digits = ident.strip_prefix('t')?;
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let k: usize = digits.parse().ok()?;
        k.checked_sub(1)
    }

    /// Whether `name` is acceptable as a parameter name.
    pub fn valid_name(name: &str) -> bool {
        let mut chars = name.chars();
        matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
            && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
    }
}
