#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <string>
#include <vector>

// Extra command-line arguments (used by the CLI tests to locate the
// binary under test).
std::vector<std::string> g_test_args;

int main(int argc, char** argv) {
    for (int i = 0; i < argc; ++i) g_test_args.emplace_back(argv[i]);
    doctest::Context ctx;
    ctx.applyCommandLine(argc, argv);
    return ctx.run();
}
