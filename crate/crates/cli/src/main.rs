fn main() {
    std::process::exit(fock_asymptotics::execute(std::env::args_os()));
}
