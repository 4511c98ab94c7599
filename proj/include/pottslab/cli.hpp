#ifndef POTTSLAB_CLI_HPP
#define POTTSLAB_CLI_HPP

namespace pottslab {

/// Dispatch the command line. Exit codes: 0 success, 2 usage error,
/// 3 resource-ceiling refusal, 1 other runtime failure. Diagnostics go to
/// stderr only.
int cli_main(int argc, const char* const* argv);

}  // namespace pottslab

#endif
