fn main() {
    zerocycle::cli::main_entry();
}
