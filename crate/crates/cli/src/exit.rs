pub const SEPARABLE: u8 = 0;
pub const NOT_SEPARABLE: u8 = 1;
pub const INPUT_ERROR: u8 = 2;
pub const ORACLE_DISAGREES: u8 = 3;

/// Exit code for commands that only produce output.
pub const OK: u8 = 0;

pub fn from_clap_error(error: clap::Error) -> u8 {
    let _ = error.print();
    if error.use_stderr() {
        INPUT_ERROR
    } else {
        OK
    }
}
