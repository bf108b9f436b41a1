// Regenerates the committed model fixtures under data/. Run from the
// repository root:
//
//   build/tools/qfs_make_fixtures data
//
// The files are deterministic; tests assert that the committed copies match
// freshly generated ones byte for byte.

#include <fstream>
#include <iostream>

#include "qfs/models.hpp"

namespace {

int write_model(const std::string& dir, const std::string& name,
                const qfs::models::ModelFile& model) {
  const std::string path = dir + "/" + name;
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "cannot write " << path << "\n";
    return 1;
  }
  out << qfs::models::model_to_json(model).dump(2) << "\n";
  std::cout << "wrote " << path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string dir = argc > 1 ? argv[1] : "data";
  int rc = 0;
  rc |= write_model(dir, "cube_model.json", qfs::models::cube_model_file());
  rc |= write_model(dir, "sign_flip_model.json", qfs::models::sign_flip_model_file());
  return rc;
}
