use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Address of a subformula: a root-to-node path of child indices, optionally
/// narrowed to a selection of that node's children.
///
/// Text form: `.` for the root, `0.2` for a path, `0.2[0,1]` for a selection.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Handle {
    pub path: Vec<usize>,
    pub children: Option<Vec<usize>>,
}

impl Handle {
    pub fn root() -> Self {
        Handle { path: Vec::new(), children: None }
    }

    pub fn node(path: Vec<usize>) -> Self {
        Handle { path, children: None }
    }

    pub fn selection(path: Vec<usize>, children: Vec<usize>) -> Self {
        Handle { path, children: Some(children) }
    }
}

impl fmt::Display for Handle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            f.write_str(".")?;
        } else {
            let parts: Vec<String> = self.path.iter().map(usize::to_string).collect();
            f.write_str(&parts.join("."))?;
        }
        if let Some(sel) = &self.children {
            let parts: Vec<String> = sel.iter().map(usize::to_string).collect();
            write!(f, "[{}]", parts.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for Handle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::InvalidArgument(format!("malformed handle `{s}`"));
        let s = s.trim();
        let (path_part, sel_part) = match s.find('[') {
            Some(i) => {
                let rest = s[i + 1..].strip_suffix(']').ok_or_else(bad)?;
                (&s[..i], Some(rest))
            }
            None => (s, None),
        };
        let path = match path_part {
            "" | "." => Vec::new(),
            p => p
                .split('.')
                .map(|t| t.parse::<usize>().map_err(|_| bad()))
                .collect::<Result<_, _>>()?,
        };
        let children = sel_part
            .map(|sel| {
                sel.split(',')
                    .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>, _>>()
            })
            .transpose()?;
        Ok(Handle { path, children })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_form() {
        for s in [".", "0", "0.2.1", "1[0,2]", ".[0,1]"] {
            let h: Handle = s.parse().unwrap();
            assert_eq!(h.to_string(), s);
        }
        assert!("0.x".parse::<Handle>().is_err());
        assert!("0[1".parse::<Handle>().is_err());
    }
}
