//! Chain serialisation.
//!
//! CSV layout: `iteration,theta_0,…,theta_{p-1},accepted,subsample_size`, one
//! row per iteration (1-based), `accepted` as `0`/`1`. Floats use Rust's
//! shortest round-trip formatting, so parsing recovers every value exactly.
//!
//! Binary layout (little endian): magic `MLOCHAIN`, `u32` version, `u64` N,
//! `u64` p, then per iteration `p × f64`, `u8` accepted, `u64` size.

use std::io::{BufRead, Read, Write};

use crate::error::{Error, Result};
use crate::samplers::ChainRun;

const MAGIC: &[u8; 8] = b"MLOCHAIN";
const VERSION: u32 = 1;

pub fn write_csv<W: Write>(run: &ChainRun, mut out: W) -> Result<()> {
    let p = run.dim();
    let mut header = String::from("iteration");
    for j in 0..p {
        header.push_str(&format!(",theta_{j}"));
    }
    header.push_str(",accepted,subsample_size");
    writeln!(out, "{header}")?;
    for (k, draw) in run.draws.iter().enumerate() {
        write!(out, "{}", k + 1)?;
        for v in draw {
            write!(out, ",{v}")?;
        }
        writeln!(out, ",{},{}", u8::from(run.accepted[k]), run.subsample_sizes[k])?;
    }
    Ok(())
}

pub fn read_csv<R: BufRead>(input: R) -> Result<ChainRun> {
    let mut lines = input.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::ChainFormat("empty file".into()))??;
    let columns = header.split(',').count();
    if columns < 3 {
        return Err(Error::ChainFormat(format!("bad header: {header}")));
    }
    let p = columns - 3;
    let mut run = ChainRun {
        draws: Vec::new(),
        accepted: Vec::new(),
        subsample_sizes: Vec::new(),
    };
    for (line_no, line) in lines.enumerate() {
        let line = line?;
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        let bad = |what: &str| Error::ChainFormat(format!("line {}: {what}", line_no + 2));
        if fields.len() != columns {
            return Err(bad("wrong number of fields"));
        }
        let draw = fields[1..=p]
            .iter()
            .map(|f| f.parse::<f64>().map_err(|_| bad("bad float")))
            .collect::<Result<Vec<_>>>()?;
        let accepted = match fields[p + 1] {
            "0" => false,
            "1" => true,
            _ => return Err(bad("accepted must be 0 or 1")),
        };
        let size = fields[p + 2].parse::<usize>().map_err(|_| bad("bad subsample size"))?;
        run.draws.push(draw);
        run.accepted.push(accepted);
        run.subsample_sizes.push(size);
    }
    Ok(run)
}

pub fn write_binary<W: Write>(run: &ChainRun, mut out: W) -> Result<()> {
    out.write_all(MAGIC)?;
    out.write_all(&VERSION.to_le_bytes())?;
    out.write_all(&(run.len() as u64).to_le_bytes())?;
    out.write_all(&(run.dim() as u64).to_le_bytes())?;
    for (k, draw) in run.draws.iter().enumerate() {
        for v in draw {
            out.write_all(&v.to_le_bytes())?;
        }
        out.write_all(&[u8::from(run.accepted[k])])?;
        out.write_all(&(run.subsample_sizes[k] as u64).to_le_bytes())?;
    }
    Ok(())
}

fn read_array<const N: usize, R: Read>(input: &mut R) -> Result<[u8; N]> {
    let mut buf = [0u8; N];
    input
        .read_exact(&mut buf)
        .map_err(|e| Error::ChainFormat(format!("truncated: {e}")))?;
    Ok(buf)
}

pub fn read_binary<R: Read>(mut input: R) -> Result<ChainRun> {
    if &read_array::<8, _>(&mut input)? != MAGIC {
        return Err(Error::ChainFormat("bad magic".into()));
    }
    let version = u32::from_le_bytes(read_array(&mut input)?);
    if version != VERSION {
        return Err(Error::ChainFormat(format!("unsupported version {version}")));
    }
    let n = u64::from_le_bytes(read_array(&mut input)?) as usize;
    let p = u64::from_le_bytes(read_array(&mut input)?) as usize;
    let mut run = ChainRun {
        draws: Vec::with_capacity(n),
        accepted: Vec::with_capacity(n),
        subsample_sizes: Vec::with_capacity(n),
    };
    for _ in 0..n {
        let draw = (0..p)
            .map(|_| read_array(&mut input).map(f64::from_le_bytes))
            .collect::<Result<Vec<_>>>()?;
        let [flag] = read_array::<1, _>(&mut input)?;
        run.draws.push(draw);
        run.accepted.push(flag != 0);
        run.subsample_sizes
            .push(u64::from_le_bytes(read_array(&mut input)?) as usize);
    }
    Ok(run)
}
