// hstab command-line front end. Talks to the library only through hstab.h.

#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "hstab/hstab.h"

namespace {

using nlohmann::json;

enum Exit { kPass = 0, kViolation = 1, kResource = 2, kInput = 3, kInternal = 4 };

int exit_code(hstab_status s) {
  switch (s) {
    case HSTAB_OK:
      return kPass;
    case HSTAB_ERROR_RESOURCE:
      return kResource;
    case HSTAB_ERROR_ARGUMENT:
    case HSTAB_ERROR_PARSE:
      return kInput;
    default:
      return kInternal;
  }
}

const char* status_name(hstab_status s) {
  switch (s) {
    case HSTAB_ERROR_ARGUMENT:
      return "argument error";
    case HSTAB_ERROR_PARSE:
      return "parse error";
    case HSTAB_ERROR_RESOURCE:
      return "resource limit";
    default:
      return "internal error";
  }
}

template <class T>
void put(json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Homological stability laboratory"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(hstab_version()));

  std::string format = "json";
  std::optional<std::string> cache_dir, output;
  bool no_cache = false, no_timing = false;
  unsigned jobs = 1;
  std::optional<long long> max_entries;
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv", "md"}));
  app.add_option("--cache-dir", cache_dir, "Result cache directory (default $HSTAB_CACHE_DIR or the user cache root)");
  app.add_flag("--no-cache", no_cache, "Do not read or write the result cache");
  app.add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--max-entries", max_entries, "Cap on stored matrix entries")->check(CLI::PositiveNumber);
  app.add_flag("--no-timing", no_timing, "Omit timing from the report");
  app.add_option("--output", output, "Write the report to a file");

  json params = json::object();
  std::string command;

  // homology
  auto* hom = app.add_subcommand("homology", "Homology of a family member, a group or a complex file");
  std::string hom_family;
  std::optional<long long> hom_n, hom_deg, hom_top;
  std::optional<std::string> hom_coeffs, hom_group, hom_input;
  hom->add_option("family", hom_family, "braid | alt-braid | sign-twisted | group | complex")->required();
  hom->add_option("-n", hom_n, "Number of points");
  hom->add_option("--coeffs", hom_coeffs, "z, fp:<p>, trivial-z, sign-z, regular-z, trivial-fp:<p>, ...");
  hom->add_option("--group", hom_group, "A4, S5 or cycle generators such as \"(1 2 3),(1 2)\"");
  hom->add_option("--deg", hom_deg, "Top degree reported for groups");
  hom->add_option("--top", hom_top, "Bar complex truncation");
  hom->add_option("--input", hom_input, "Chain complex JSON file");
  hom->callback([&] {
    command = "homology";
    params["family"] = hom_family;
    put(params, "n", hom_n);
    put(params, "coeffs", hom_coeffs);
    put(params, "group", hom_group);
    put(params, "deg", hom_deg);
    put(params, "top", hom_top);
    put(params, "input", hom_input);
  });

  // stability
  auto* stab = app.add_subcommand("stability", "Stabilization maps against the predicted ranges");
  std::string stab_family;
  std::optional<long long> nmin, nmax, qmax;
  std::optional<std::string> stab_coeffs;
  stab->add_option("--family", stab_family, "braid | alt-braid | sign-twisted | sign-fp:<p> | alt-group")->required();
  stab->add_option("--nmin", nmin, "Smallest n (default 1)");
  stab->add_option("--nmax", nmax, "Largest n")->required();
  stab->add_option("--qmax", qmax, "Largest degree (default 3)");
  stab->add_option("--coeffs", stab_coeffs, "Coefficient module");
  stab->callback([&] {
    command = "stability";
    params["family"] = stab_family;
    put(params, "nmin", nmin);
    put(params, "nmax", nmax);
    put(params, "qmax", qmax);
    put(params, "coeffs", stab_coeffs);
  });

  // injective-words
  auto* inj = app.add_subcommand("injective-words", "Homology of the complex of injective words");
  long long inj_n = 0;
  bool verify = false;
  inj->add_option("-n", inj_n, "Number of letters")->required();
  inj->add_flag("--verify", verify, "Compare with the wedge-of-spheres prediction");
  inj->callback([&] {
    command = "injective-words";
    params["n"] = inj_n;
    params["verify"] = verify;
  });

  // ss
  auto* ss = app.add_subcommand("ss", "Spectral sequence page of a filtered input");
  std::string ss_input, ss_page = "inf";
  long long ss_prime = 2;
  ss->add_option("--input", ss_input, "Delta-set, map or filtered complex JSON")->required();
  ss->add_option("--prime", ss_prime, "Field characteristic (default 2)");
  ss->add_option("--page", ss_page, "Page index or inf (default inf)");
  ss->callback([&] {
    command = "ss";
    params["input"] = ss_input;
    params["prime"] = ss_prime;
    params["page"] = ss_page;
  });

  // group-homology
  auto* grp = app.add_subcommand("group-homology", "Bar-complex homology of a permutation group");
  std::string grp_group;
  long long grp_deg = 1;
  std::optional<long long> grp_top;
  std::optional<std::string> into;
  grp->add_option("--group", grp_group, "A4, S5 or cycle generators")->required();
  grp->add_option("--deg", grp_deg, "Degree (default 1)");
  grp->add_option("--into", into, "Report the map induced by inclusion into this group");
  grp->add_option("--top", grp_top, "Bar complex truncation (default deg + 1)");
  grp->callback([&] {
    command = "group-homology";
    params["group"] = grp_group;
    params["deg"] = grp_deg;
    put(params, "into", into);
    put(params, "top", grp_top);
  });

  // snf
  auto* snf = app.add_subcommand("snf", "Smith normal form of a matrix in the text format");
  std::string snf_input;
  std::optional<long long> snf_prime;
  snf->add_option("--input", snf_input, "Matrix file")->required();
  snf->add_option("--prime", snf_prime, "Report the rank mod p instead");
  snf->callback([&] {
    command = "snf";
    params["input"] = snf_input;
    put(params, "prime", snf_prime);
  });

  // counterexample
  auto* cex = app.add_subcommand("counterexample", "Sign-twisted F_p -> 0 check at n = lambda p + 1");
  long long cex_p = 3, cex_lambda = 1;
  cex->add_option("-p,--p", cex_p, "Odd prime")->required();
  cex->add_option("--lambda", cex_lambda, "Multiplier (default 1)");
  cex->callback([&] {
    command = "counterexample";
    params["p"] = cex_p;
    params["lambda"] = cex_lambda;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kInput;
  }

  json options = json::object();
  if (cache_dir) options["cache_dir"] = *cache_dir;
  options["no_cache"] = no_cache;
  options["jobs"] = jobs;
  if (max_entries) options["max_entries"] = *max_entries;

  hstab_session* session = nullptr;
  hstab_status s = hstab_session_create(options.dump().c_str(), &session);
  if (s != HSTAB_OK) {
    std::cerr << "hstab: " << status_name(s) << ": invalid session options\n";
    return exit_code(s);
  }
  hstab_report* report = nullptr;
  s = hstab_run(session, command.c_str(), params.dump().c_str(), &report);
  if (s != HSTAB_OK) {
    std::cerr << "hstab: " << status_name(s) << ": " << hstab_session_last_error(session) << '\n';
    hstab_session_destroy(session);
    return exit_code(s);
  }
  char* text = nullptr;
  s = hstab_report_render(report, format.c_str(), no_timing ? 0 : 1, &text);
  int code = kInternal;
  if (s == HSTAB_OK) {
    code = hstab_report_pass(report) ? kPass : kViolation;
    if (output) {
      std::ofstream out(*output, std::ios::binary);
      out << text;
      if (!out) {
        std::cerr << "hstab: cannot write '" << *output << "'\n";
        code = kInput;
      }
    } else {
      std::fwrite(text, 1, std::strlen(text), stdout);
    }
    hstab_string_free(text);
  } else {
    std::cerr << "hstab: " << status_name(s) << ": cannot render the report\n";
    code = exit_code(s);
  }
  hstab_report_destroy(report);
  hstab_session_destroy(session);
  return code;
}
