use qbs_core::amplifier::AmplifierConfig;
use qbs_core::oracle::OracleSpec;
use qbs_core::search::run_search;

fn main() -> qbs_core::Result<()> {
    let spec = OracleSpec::from_minterms(2, &[2])?;
    let report = run_search(&spec, &AmplifierConfig::for_bits(2))?;
    assert_eq!(report.solution(), Some(2));
    assert_eq!(report.stages[0].p, 0.5);
    println!("found x = {} (bits \"{}\")", report.bits.value(), report.bits);
    Ok(())
}
