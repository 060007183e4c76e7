#include "commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  using moran::cli::Options;
  CLI::App app{"Moran constructions: pressure, separation, microsets and measures"};
  app.require_subcommand(1);
  Options opt;

  auto common = [&](CLI::App* sub, bool needs_spec = true) {
    auto* spec = sub->add_option("--spec", opt.spec, "JSON spec file");
    if (needs_spec) spec->required()->check(CLI::ExistingFile);
    sub->add_option("--depth", opt.depth, "Depth or level (command default when omitted)");
    sub->add_option("--tol", opt.tol, "Numeric tolerance (default 1e-10 spectral, 1e-6 finite-level)")->check(CLI::PositiveNumber);
    sub->add_option("--seed", opt.seed, "Random seed");
    sub->add_option("--precision", opt.precision, "Floating mantissa bits (53 or 64)")->check(CLI::IsMember({53, 64}));
    sub->add_option("--out", opt.out, "Output directory");
    sub->add_option("--format", opt.format, "Only write outputs of this format")
        ->check(CLI::IsMember({"csv", "json", "svg"}));
    sub->add_option("--budget", opt.budget, "Node budget");
  };

  auto* pressure = app.add_subcommand("pressure", "Zero of the pressure function");
  common(pressure);
  pressure->add_option("--method", opt.method, "auto, spectral or finite")
      ->check(CLI::IsMember({"auto", "spectral", "finite"}));

  auto* dim = app.add_subcommand("dim", "Pressure zero with box-count check");
  common(dim);
  dim->add_flag("--evidence", opt.evidence, "Attach a clustering scan");

  auto* sep = app.add_subcommand("check-sep", "Clustering scan of #Gamma(x, r)");
  common(sep);
  sep->add_option("--n", opt.n, "Number of radii");
  sep->add_option("--count", opt.count, "words or maps")->check(CLI::IsMember({"words", "maps"}));

  auto* dedup = app.add_subcommand("dedup", "Remove words realizing repeated maps");
  common(dedup);

  auto* micro = app.add_subcommand("microsets", "Depth-n miniset family");
  common(micro);

  auto* assouad = app.add_subcommand("assouad", "Difference-quotient Assouad estimate");
  common(assouad);

  auto* localdim = app.add_subcommand("localdim", "Local dimension of a Markov measure");
  common(localdim);
  localdim->add_option("--n", opt.n, "Word length");
  localdim->add_option("--samples", opt.samples, "Sample paths");
  localdim->add_option("--radii", opt.radii, "Also compute ball quotients at 2^-1 .. 2^-K");
  localdim->add_option("--bernoulli", opt.bernoulli, "Comma separated weights, overrides the spec measure");

  auto* entropy = app.add_subcommand("entropy", "Exact and empirical entropy");
  common(entropy);
  entropy->add_option("--n", opt.n, "Word length for the empirical estimate");
  entropy->add_option("--samples", opt.samples, "Sample paths");
  entropy->add_option("--bernoulli", opt.bernoulli, "Comma separated weights, overrides the spec measure");

  auto* demo = app.add_subcommand("furstenberg-demo", "Magnifications of the three-map example");
  common(demo, false);
  demo->add_option("--jmax", opt.jmax, "Last sequence index");
  demo->add_option("--anchor", opt.anchor, "Anchor word length for windows");

  auto* render = app.add_subcommand("render", "SVG of the construction");
  common(render);
  render->add_flag("--gaps", opt.gaps, "Shade the level-1 gaps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  opt.command = app.get_subcommands().front()->get_name();
  return moran::cli::run(opt);
}
