#pragma once

namespace mdl {

/// Command-line front end; returns the process exit code (0 iff every
/// verdict passes, nonzero on usage errors).
int cli_main(int argc, char** argv);

}  // namespace mdl
