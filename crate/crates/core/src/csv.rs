//! CSV helpers. Floats use the shortest decimal that round-trips to the same `f64`.

use std::io::Write;

use crate::error::Result;

pub fn fmt_f64(x: f64) -> String {
    let mut buf = ryu::Buffer::new();
    buf.format(x).to_string()
}

/// Writes `header` followed by one line per row of already-formatted cells.
pub fn write_rows<W, I, R>(mut w: W, header: &[&str], rows: I) -> Result<()>
where
    W: Write,
    I: IntoIterator<Item = R>,
    R: AsRef<[String]>,
{
    writeln!(w, "{}", header.join(","))?;
    for row in rows {
        writeln!(w, "{}", row.as_ref().join(","))?;
    }
    Ok(())
}

/// Two-column numeric table such as `t,c_k` or `n,b_n`.
pub fn write_xy<W: Write>(w: W, header: [&str; 2], xs: &[f64], ys: &[f64]) -> Result<()> {
    write_rows(
        w,
        &header,
        xs.iter().zip(ys).map(|(&x, &y)| [fmt_f64(x), fmt_f64(y)]),
    )
}
