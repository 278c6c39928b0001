// Placeholder until the CLI lands; replaced once the library surface exists.
int main() { return 0; }
