fn main() {
    // Die quietly on a closed pipe (`sunflower-lab ... | head`) like other
    // command-line tools, instead of panicking in println!.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    std::process::exit(sunflower_lab::cli::run(std::env::args_os()))
}
