use std::fmt::Write;

/// Minimal CSV builder: fields here never contain commas or quotes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Csv {
    text: String,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        let mut text = header.join(",");
        text.push('\n');
        Csv { text }
    }

    pub fn row<I, T>(&mut self, fields: I)
    where
        I: IntoIterator<Item = T>,
        T: std::fmt::Display,
    {
        let mut first = true;
        for f in fields {
            if !first {
                self.text.push(',');
            }
            first = false;
            write!(self.text, "{f}").expect("writing to a String");
        }
        self.text.push('\n');
    }

    pub fn as_str(&self) -> &str {
        &self.text
    }

    pub fn into_string(self) -> String {
        self.text
    }

    /// Data rows, header excluded.
    pub fn len(&self) -> usize {
        self.text.lines().count() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Shortest round-trip form of a float, in exponent notation when very
/// small or large.
#[derive(Debug, Clone, Copy)]
pub struct Num(pub f64);

impl std::fmt::Display for Num {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let a = self.0.abs();
        if a == 0.0 || !a.is_finite() || (1e-4..1e15).contains(&a) {
            write!(f, "{}", self.0)
        } else {
            write!(f, "{:e}", self.0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_rows() {
        let mut c = Csv::new(&["a", "b"]);
        c.row([1.5, 2.0]);
        c.row(["x", "y"]);
        assert_eq!(c.as_str(), "a,b\n1.5,2\nx,y\n");
        assert_eq!(c.len(), 2);
    }

    #[test]
    fn number_format() {
        assert_eq!(Num(0.4).to_string(), "0.4");
        assert_eq!(Num(0.0).to_string(), "0");
        assert_eq!(Num(-2.5e-22).to_string(), "-2.5e-22");
        assert_eq!(Num(3e20).to_string(), "3e20");
        let x = 0.1f64 + 0.2;
        assert_eq!(Num(x).to_string().parse::<f64>().unwrap(), x);
    }
}
