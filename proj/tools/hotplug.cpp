#include "hotplug/cli.hpp"

int main(int argc, char** argv) { return hotplug::cli::run(argc, argv); }
