use std::io::Write;

use graphsym::{graph6, SampleStream};

pub fn write_trees(n: usize, count: u64, seed: u64, out: &mut dyn Write) -> anyhow::Result<()> {
    let stream = SampleStream::trees(seed, n, count)?;
    for t in stream.iter() {
        out.write_all(&graph6::encode(&t))?;
        out.write_all(b"\n")?;
    }
    Ok(())
}
