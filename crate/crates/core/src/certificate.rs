//! Embedding certificates: a common graph `H` with injections into both
//! hosts, verifiable independently of any solver, plus a text serialization
//! with a bit-exact round trip.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Induced,
    Subgraph,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Induced => "induced",
            Mode::Subgraph => "subgraph",
        }
    }
}

/// A common graph `H` together with injections `eta1 : V(H) -> V(G1)` and
/// `eta2 : V(H) -> V(G2)`. The claimed value is `|V(H)|` in induced mode and
/// `|E(H)|` in subgraph mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingCertificate {
    pub mode: Mode,
    pub h: Graph,
    pub eta1: Vec<usize>,
    pub eta2: Vec<usize>,
    pub value: usize,
}

impl EmbeddingCertificate {
    pub fn new(mode: Mode, h: Graph, eta1: Vec<usize>, eta2: Vec<usize>) -> Self {
        let value = match mode {
            Mode::Induced => h.n(),
            Mode::Subgraph => h.m(),
        };
        EmbeddingCertificate { mode, h, eta1, eta2, value }
    }

    pub fn empty(mode: Mode) -> Self {
        EmbeddingCertificate::new(mode, Graph::empty(0), Vec::new(), Vec::new())
    }

    /// Identity certificate on `(g, g)`.
    pub fn identity(mode: Mode, g: &Graph) -> Self {
        let ids: Vec<usize> = g.vertices().collect();
        EmbeddingCertificate::new(mode, g.clone(), ids.clone(), ids)
    }
}

/// First violation found when checking a certificate, named precisely.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertificateViolation {
    #[error("eta{side} has {len} entries but H has {expected} vertices")]
    EtaLength { side: u8, len: usize, expected: usize },
    #[error("eta{side}({h_vertex}) = {image} is out of range for a host with {n} vertices")]
    EtaRange { side: u8, h_vertex: usize, image: usize, n: usize },
    #[error("eta{side} is not injective: vertices {u} and {v} both map to {image}")]
    NotInjective { side: u8, u: usize, v: usize, image: usize },
    #[error("H edge {{{u}, {v}}} has no image edge {{{iu}, {iv}}} in G{side}")]
    MissingEdge { side: u8, u: usize, v: usize, iu: usize, iv: usize },
    #[error("induced violation in G{side}: non-edge {{{u}, {v}}} of H maps onto edge {{{iu}, {iv}}}")]
    ExtraEdge { side: u8, u: usize, v: usize, iu: usize, iv: usize },
    #[error("claimed value {claimed} but H yields {actual}")]
    ValueMismatch { claimed: usize, actual: usize },
}

/// Check all certificate invariants against the two hosts. `Ok(())` means
/// the certificate witnesses a common (induced) subgraph of the claimed value.
pub fn verify_certificate(
    g1: &Graph,
    g2: &Graph,
    cert: &EmbeddingCertificate,
) -> Result<(), CertificateViolation> {
    let hn = cert.h.n();
    for (side, eta, g) in [(1u8, &cert.eta1, g1), (2u8, &cert.eta2, g2)] {
        if eta.len() != hn {
            return Err(CertificateViolation::EtaLength { side, len: eta.len(), expected: hn });
        }
        for (v, &img) in eta.iter().enumerate() {
            if img >= g.n() {
                return Err(CertificateViolation::EtaRange { side, h_vertex: v, image: img, n: g.n() });
            }
        }
        for u in 0..hn {
            for v in (u + 1)..hn {
                if eta[u] == eta[v] {
                    return Err(CertificateViolation::NotInjective { side, u, v, image: eta[u] });
                }
            }
        }
        for u in 0..hn {
            for v in (u + 1)..hn {
                let (iu, iv) = (eta[u], eta[v]);
                let in_h = cert.h.has_edge(u, v);
                let in_g = g.has_edge(iu, iv);
                if in_h && !in_g {
                    return Err(CertificateViolation::MissingEdge { side, u, v, iu, iv });
                }
                if cert.mode == Mode::Induced && !in_h && in_g {
                    return Err(CertificateViolation::ExtraEdge { side, u, v, iu, iv });
                }
            }
        }
    }
    let actual = match cert.mode {
        Mode::Induced => cert.h.n(),
        Mode::Subgraph => cert.h.m(),
    };
    if cert.value != actual {
        return Err(CertificateViolation::ValueMismatch { claimed: cert.value, actual });
    }
    Ok(())
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CertificateParseError {
    #[error("line {line}: expected \"{expected}\"")]
    Field { line: usize, expected: &'static str },
    #[error("certificate graph: {0}")]
    Graph(crate::graph::GraphParseError),
}

/// Serialization: `mode`, `value`, `h` (header plus edge lines exactly as the
/// graph format), then `eta1` and `eta2` as index arrays on single lines.
impl fmt::Display for EmbeddingCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "mode {}", self.mode.as_str())?;
        writeln!(f, "value {}", self.value)?;
        write!(f, "h {}", self.h)?;
        for (name, eta) in [("eta1", &self.eta1), ("eta2", &self.eta2)] {
            write!(f, "{}", name)?;
            for &v in eta.iter() {
                write!(f, " {}", v)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl FromStr for EmbeddingCertificate {
    type Err = CertificateParseError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let lines: Vec<&str> = text.lines().collect();
        let mut at = 0usize;
        let mut take = |prefix: &'static str| -> Result<&str, CertificateParseError> {
            let line = lines
                .get(at)
                .ok_or(CertificateParseError::Field { line: at + 1, expected: prefix })?;
            let rest = line
                .strip_prefix(prefix)
                .ok_or(CertificateParseError::Field { line: at + 1, expected: prefix })?;
            at += 1;
            Ok(rest.trim_start())
        };

        let mode = match take("mode ")? {
            "induced" => Mode::Induced,
            "subgraph" => Mode::Subgraph,
            _ => return Err(CertificateParseError::Field { line: 1, expected: "mode induced|subgraph" }),
        };
        let value: usize = take("value ")?
            .parse()
            .map_err(|_| CertificateParseError::Field { line: 2, expected: "value <int>" })?;
        let header = take("h ")?;
        let m: usize = header
            .split_whitespace()
            .nth(1)
            .and_then(|t| t.parse().ok())
            .ok_or(CertificateParseError::Field { line: 3, expected: "h <n> <m>" })?;
        let mut graph_text = String::from(header);
        graph_text.push('\n');
        for _ in 0..m {
            let line = lines
                .get(at)
                .ok_or(CertificateParseError::Field { line: at + 1, expected: "edge line" })?;
            graph_text.push_str(line);
            graph_text.push('\n');
            at += 1;
        }
        let h: Graph = graph_text.parse().map_err(CertificateParseError::Graph)?;

        let mut etas = Vec::new();
        for name in ["eta1", "eta2"] {
            let line = lines
                .get(at)
                .ok_or(CertificateParseError::Field { line: at + 1, expected: name })?;
            if !(line.trim_end() == name || line.starts_with(&format!("{} ", name))) {
                return Err(CertificateParseError::Field { line: at + 1, expected: name });
            }
            let nums: Result<Vec<usize>, _> = line[name.len()..]
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect();
            let eta = nums.map_err(|_| CertificateParseError::Field {
                line: at + 1,
                expected: "eta index array",
            })?;
            etas.push(eta);
            at += 1;
        }
        let eta2 = etas.pop().unwrap();
        let eta1 = etas.pop().unwrap();
        Ok(EmbeddingCertificate { mode, h, eta1, eta2, value })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_verifies() {
        let g = Graph::complete(3).disjoint_union(&Graph::path(2));
        let cert = EmbeddingCertificate::identity(Mode::Induced, &g);
        assert_eq!(verify_certificate(&g, &g, &cert), Ok(()));
        let cert = EmbeddingCertificate::identity(Mode::Subgraph, &g);
        assert_eq!(verify_certificate(&g, &g, &cert), Ok(()));
    }

    #[test]
    fn subgraph_cert_fails_in_induced_mode() {
        // P3 inside K3 is fine as a subgraph but not induced.
        let g = Graph::complete(3);
        let h = Graph::path(3);
        let sub = EmbeddingCertificate::new(Mode::Subgraph, h.clone(), vec![0, 1, 2], vec![0, 1, 2]);
        assert_eq!(verify_certificate(&g, &g, &sub), Ok(()));
        let ind = EmbeddingCertificate::new(Mode::Induced, h, vec![0, 1, 2], vec![0, 1, 2]);
        assert_eq!(
            verify_certificate(&g, &g, &ind),
            Err(CertificateViolation::ExtraEdge { side: 1, u: 0, v: 2, iu: 0, iv: 2 })
        );
    }

    #[test]
    fn injectivity_checked() {
        let g = Graph::path(3);
        let cert = EmbeddingCertificate::new(Mode::Induced, Graph::empty(2), vec![1, 1], vec![0, 2]);
        assert_eq!(
            verify_certificate(&g, &g, &cert),
            Err(CertificateViolation::NotInjective { side: 1, u: 0, v: 1, image: 1 })
        );
    }

    #[test]
    fn value_mismatch_checked() {
        let g = Graph::path(2);
        let mut cert = EmbeddingCertificate::identity(Mode::Subgraph, &g);
        cert.value = 5;
        assert_eq!(
            verify_certificate(&g, &g, &cert),
            Err(CertificateViolation::ValueMismatch { claimed: 5, actual: 1 })
        );
    }

    #[test]
    fn round_trip_is_bit_exact() {
        let h = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let cert = EmbeddingCertificate::new(Mode::Induced, h, vec![4, 2, 1, 0], vec![0, 1, 2, 3]);
        let text = cert.to_string();
        let back: EmbeddingCertificate = text.parse().unwrap();
        assert_eq!(back, cert);
        assert_eq!(back.to_string(), text);
    }

    #[test]
    fn empty_round_trip() {
        let cert = EmbeddingCertificate::empty(Mode::Subgraph);
        let text = cert.to_string();
        let back: EmbeddingCertificate = text.parse().unwrap();
        assert_eq!(back, cert);
    }
}
