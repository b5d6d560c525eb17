//! Plain-text dump of constructed ray networks.
//!
//! ```text
//! netspec 1
//! kind ray-net
//! n 5
//! c 5
//! crossing-depth 2
//! layers 4
//! layer 1
//! shape 2 1 1 1
//! anchor 0 0
//! dilation 1
//! activation relu
//! bias -1
//! kernel 1 1
//! end
//! ...
//! ```
//!
//! `shape` is `kh kw cin cout`; `kernel` lists `[v][w][c][o]` row-major;
//! `activation` is `relu`, `none` or `sigmoid <q>`. Numbers use Rust's
//! shortest round-trip formatting, so parsing a dump gives back the same
//! network bit for bit. Blank lines and `#` comments are ignored.

use std::fmt::Write as _;

use super::{ConvLayerSpec, NetworkError, Nonlinearity, RayNetKind, RayNetSpec};

const VERSION: u32 = 1;

fn join(values: &[f64]) -> String {
    let mut s = String::new();
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        write!(s, "{v}").expect("writing to a String");
    }
    s
}

pub fn write_netspec(net: &RayNetSpec) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "netspec {VERSION}");
    let _ = writeln!(out, "kind {}", net.kind.name());
    let _ = writeln!(out, "n {}", net.n);
    let _ = writeln!(out, "c {}", net.c);
    let _ = writeln!(out, "crossing-depth {}", net.crossing_depth);
    let _ = writeln!(out, "layers {}", net.layers.len());
    for (i, l) in net.layers.iter().enumerate() {
        let _ = writeln!(out, "layer {}", i + 1);
        let _ = writeln!(out, "shape {} {} {} {}", l.kh, l.kw, l.cin, l.cout);
        let _ = writeln!(out, "anchor {} {}", l.anchor.0, l.anchor.1);
        let _ = writeln!(out, "dilation {}", l.dilation);
        let act = match l.nonlinearity {
            Nonlinearity::Relu => "relu".to_string(),
            Nonlinearity::None => "none".to_string(),
            Nonlinearity::Sigmoid(q) => format!("sigmoid {q}"),
        };
        let _ = writeln!(out, "activation {act}");
        let _ = writeln!(out, "bias {}", join(&l.bias));
        let _ = writeln!(out, "kernel {}", join(&l.kernel));
        let _ = writeln!(out, "end");
    }
    out
}

struct Lines<'a> {
    inner: std::iter::Peekable<Box<dyn Iterator<Item = (usize, &'a str)> + 'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let it: Box<dyn Iterator<Item = (usize, &'a str)> + 'a> = Box::new(
            text.lines()
                .enumerate()
                .map(|(i, l)| (i + 1, l.trim()))
                .filter(|(_, l)| !l.is_empty() && !l.starts_with('#')),
        );
        Self {
            inner: it.peekable(),
            last: 0,
        }
    }

    fn err(&self, message: impl Into<String>) -> NetworkError {
        NetworkError::Parse {
            line: self.last,
            message: message.into(),
        }
    }

    /// Next line, which must start with `key`; returns the remaining fields.
    fn expect(&mut self, key: &str) -> Result<Vec<&'a str>, NetworkError> {
        let (n, line) = self
            .inner
            .next()
            .ok_or_else(|| self.err(format!("unexpected end of input, wanted `{key}`")))?;
        self.last = n;
        let mut fields = line.split_whitespace();
        match fields.next() {
            Some(k) if k == key => Ok(fields.collect()),
            Some(k) => Err(self.err(format!("expected `{key}`, found `{k}`"))),
            None => Err(self.err("empty line")),
        }
    }

    fn usize_fields(&mut self, key: &str, count: usize) -> Result<Vec<usize>, NetworkError> {
        let f = self.expect(key)?;
        if f.len() != count {
            return Err(self.err(format!("`{key}` takes {count} values, got {}", f.len())));
        }
        f.iter()
            .map(|s| {
                s.parse()
                    .map_err(|_| self.err(format!("bad integer `{s}`")))
            })
            .collect()
    }

    fn floats(&mut self, key: &str) -> Result<Vec<f64>, NetworkError> {
        let f = self.expect(key)?;
        f.iter()
            .map(|s| s.parse().map_err(|_| self.err(format!("bad number `{s}`"))))
            .collect()
    }
}

pub fn parse_netspec(text: &str) -> Result<RayNetSpec, NetworkError> {
    let mut lines = Lines::new(text);
    let version = lines.usize_fields("netspec", 1)?[0];
    if version != VERSION as usize {
        return Err(lines.err(format!("unsupported netspec version {version}")));
    }
    let kind = match lines.expect("kind")?.as_slice() {
        ["ray-net"] => RayNetKind::Direct,
        ["dilated-net"] => RayNetKind::Dilated,
        other => return Err(lines.err(format!("unknown network kind {other:?}"))),
    };
    let n = lines.usize_fields("n", 1)?[0];
    let c = lines.usize_fields("c", 1)?[0];
    let crossing_depth = lines.usize_fields("crossing-depth", 1)?[0];
    let count = lines.usize_fields("layers", 1)?[0];
    let mut layers = Vec::with_capacity(count);
    for i in 1..=count {
        let idx = lines.usize_fields("layer", 1)?[0];
        if idx != i {
            return Err(lines.err(format!("expected layer {i}, found {idx}")));
        }
        let shape = lines.usize_fields("shape", 4)?;
        let anchor = lines.usize_fields("anchor", 2)?;
        let dilation = lines.usize_fields("dilation", 1)?[0];
        let nonlinearity = match lines.expect("activation")?.as_slice() {
            ["relu"] => Nonlinearity::Relu,
            ["none"] => Nonlinearity::None,
            ["sigmoid", q] => Nonlinearity::Sigmoid(
                q.parse()
                    .map_err(|_| lines.err(format!("bad number `{q}`")))?,
            ),
            other => return Err(lines.err(format!("unknown activation {other:?}"))),
        };
        let bias = lines.floats("bias")?;
        let kernel = lines.floats("kernel")?;
        lines.expect("end")?;
        let layer = ConvLayerSpec::new(
            (shape[0], shape[1]),
            (shape[2], shape[3]),
            (anchor[0], anchor[1]),
            dilation,
            kernel,
            bias,
            nonlinearity,
        )
        .map_err(|e| lines.err(e.to_string()))?;
        layers.push(layer);
    }
    if crossing_depth == 0 || crossing_depth > layers.len() {
        return Err(lines.err(format!("crossing depth {crossing_depth} out of range")));
    }
    Ok(RayNetSpec {
        kind,
        n,
        c,
        layers,
        crossing_depth,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::networks::{build_dilated_ray_net, build_ray_net};

    #[test]
    fn round_trips() {
        for net in [
            build_ray_net(7, 7).unwrap(),
            build_dilated_ray_net(8).unwrap(),
        ] {
            let text = write_netspec(&net);
            assert_eq!(parse_netspec(&text).unwrap(), net);
        }
    }

    #[test]
    fn header_of_small_net() {
        let text = write_netspec(&build_ray_net(5, 5).unwrap());
        let head: Vec<&str> = text.lines().take(14).collect();
        assert_eq!(
            head,
            [
                "netspec 1",
                "kind ray-net",
                "n 5",
                "c 5",
                "crossing-depth 2",
                "layers 4",
                "layer 1",
                "shape 2 1 1 1",
                "anchor 0 0",
                "dilation 1",
                "activation relu",
                "bias -1",
                "kernel 1 1",
                "end",
            ]
        );
        assert!(text.contains("bias 0.5 0 -0.5 -1.5 -2 -2.5 -3.5 -4 -4.5\n"));
    }

    #[test]
    fn reports_line_of_error() {
        let text = write_netspec(&build_ray_net(5, 5).unwrap()).replace("dilation 1", "dilation x");
        match parse_netspec(&text) {
            Err(NetworkError::Parse { line, .. }) => assert_eq!(line, 10),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_netspec("netspec 2\n").is_err());
    }
}
