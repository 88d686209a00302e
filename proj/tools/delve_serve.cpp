// WebSocket front end for Session: one thread and one episode per connection.

#include <iostream>
#include <map>
#include <thread>

#include <boost/asio/ip/tcp.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>
#include <CLI11.hpp>

#include "delve/session.hpp"

namespace beast = boost::beast;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;

namespace {

void serve_connection(tcp::socket socket, delve::SessionConfig cfg) {
  try {
    websocket::stream<tcp::socket> ws(std::move(socket));
    ws.set_option(websocket::stream_base::decorator(
        [](websocket::response_type& res) { res.set(beast::http::field::server, "delve_serve"); }));
    ws.accept();
    delve::Session session(cfg);
    beast::flat_buffer buffer;
    for (;;) {
      buffer.clear();
      ws.read(buffer);
      std::string reply;
      if (!ws.got_text()) reply = delve::error_message("binary frames are not supported").dump();
      else reply = session.handle_text(beast::buffers_to_string(buffer.data()));
      ws.text(true);
      ws.write(net::buffer(reply));
    }
  } catch (const beast::system_error& e) {
    if (e.code() != websocket::error::closed && e.code() != net::error::eof &&
        e.code() != net::error::connection_reset)
      std::cerr << "delve_serve: connection: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "delve_serve: connection: " << e.what() << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Serve interactive episodes over WebSocket"};
  std::string bind = "127.0.0.1:8765";
  delve::SessionConfig cfg;
  const std::map<std::string, delve::Tier> tiers = {{"classic", delve::Tier::Classic},
                                                    {"extended", delve::Tier::Extended}};
  app.add_option("--bind", bind, "host:port to listen on");
  app.add_option("--tier", cfg.tier, "classic or extended")->transform(CLI::CheckedTransformer(tiers, CLI::ignore_case));
  app.add_option("--seed", cfg.seed, "Seed for the first reset without an explicit seed");
  CLI11_PARSE(app, argc, argv);

  const auto colon = bind.rfind(':');
  if (colon == std::string::npos) {
    std::cerr << "delve_serve: --bind must be host:port\n";
    return 1;
  }
  try {
    net::io_context ioc{1};
    const auto address = net::ip::make_address(bind.substr(0, colon));
    const auto port = static_cast<unsigned short>(std::stoul(bind.substr(colon + 1)));
    tcp::acceptor acceptor{ioc, {address, port}};
    std::cerr << "delve_serve: listening on " << acceptor.local_endpoint() << "\n";
    for (;;) {
      tcp::socket socket{ioc};
      acceptor.accept(socket);
      std::thread(serve_connection, std::move(socket), cfg).detach();
    }
  } catch (const std::exception& e) {
    std::cerr << "delve_serve: " << e.what() << "\n";
    return 1;
  }
}
