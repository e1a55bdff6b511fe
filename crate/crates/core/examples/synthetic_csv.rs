//! Writes a heart-like synthetic CSV: `synthetic_csv <rows> <seed> <path>`.

fn main() {
    let args: Vec<String> = std::env::args().collect();
    if args.len() != 4 {
        eprintln!("usage: synthetic_csv <rows> <seed> <path>");
        std::process::exit(2);
    }
    let rows: usize = args[1].parse().expect("rows must be an integer");
    let seed: u64 = args[2].parse().expect("seed must be an integer");
    let ds = heartstack::synthetic::heart_like(rows, seed);
    std::fs::write(&args[3], ds.to_csv()).expect("write csv");
}
