fn main() {
    std::process::exit(torsion_lab::cli::main_entry());
}
