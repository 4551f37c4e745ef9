#include <stdexcept>

#include "scoopw/models/models.hpp"

namespace scoopw {

std::unique_ptr<ExecutionModel> make_model(std::string_view id, const ModelOptions& options) {
  if (id == "rq") return std::make_unique<RqModel>(options);
  if (id == "qoq") return std::make_unique<QoqModel>(options);
  if (id == "dscoop") return std::make_unique<DscoopModel>(options);
  throw std::invalid_argument("unknown model '" + std::string(id) + "' (expected rq, qoq or dscoop)");
}

const std::vector<std::string>& model_ids() {
  static const std::vector<std::string> ids{"rq", "qoq", "dscoop"};
  return ids;
}

}  // namespace scoopw
