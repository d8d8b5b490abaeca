#include "irsim/run.hpp"

int main(int argc, char** argv) {
    return irsim::run::main_entry(argc, argv);
}
