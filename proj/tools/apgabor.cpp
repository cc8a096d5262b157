#include <apgabor/cli.hpp>

int
main(int argc, char** argv)
{
    return apgabor::main_entry(argc, argv);
}
