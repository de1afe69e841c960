// CLI stub; subcommands land after the numeric modules.
int main() { return 0; }
