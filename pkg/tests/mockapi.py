"""In-process programmable completions endpoint for client tests.

Serves POST requests on a loopback port.  Responses come from a scripted
queue consumed in arrival order; with an empty queue every request gets
the golden body below.  The server records request payloads/headers and
tracks the concurrent-request high-water mark.
"""

import json
import threading
import time
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer


def golden_body(prompt, k):
    # Four provider tokens; the client drops the first, yielding the
    # 3-value signal [-1.0, -0.5, -2.25] with ranks [1, 1, 2].
    logprobs = {
        "tokens": ["A", "B", "C", "D"],
        "token_logprobs": [None, -1.0, -0.5, -2.25],
    }
    if k > 0:
        logprobs["top_logprobs"] = [
            None,
            {"B": -1.0, "x": -2.0},
            {"C": -0.5, "y": -1.5},
            {"z": -0.25, "D": -2.25},
        ]
    return {"choices": [{"text": prompt, "logprobs": logprobs}]}


class _QuietServer(ThreadingHTTPServer):
    daemon_threads = True

    def handle_error(self, request, client_address):
        # client-side timeouts abort connections mid-write; not an error here
        pass


class MockEndpoint:
    def __init__(self, delay_s=0.0):
        self.script = []
        self.requests = []
        self.delay_s = delay_s
        self.active = 0
        self.max_active = 0
        self._lock = threading.Lock()
        outer = self

        class Handler(BaseHTTPRequestHandler):
            def do_POST(self):
                length = int(self.headers.get("Content-Length", 0))
                payload = json.loads(self.rfile.read(length) or b"{}")
                with outer._lock:
                    outer.active += 1
                    outer.max_active = max(outer.max_active, outer.active)
                    outer.requests.append(
                        (self.path, payload, dict(self.headers)))
                    scripted = outer.script.pop(0) if outer.script else None
                try:
                    if outer.delay_s:
                        time.sleep(outer.delay_s)
                    if scripted is None:
                        status, body = 200, None
                    else:
                        status, body = scripted
                    if body is None:
                        body = golden_body(payload.get("prompt", ""),
                                           payload.get("logprobs", 0))
                    raw = body if isinstance(body, bytes) else json.dumps(body).encode()
                    try:
                        self.send_response(status)
                        self.send_header("Content-Type", "application/json")
                        self.send_header("Content-Length", str(len(raw)))
                        self.end_headers()
                        self.wfile.write(raw)
                    except (BrokenPipeError, ConnectionResetError):
                        pass  # client gave up (timeout test)
                finally:
                    with outer._lock:
                        outer.active -= 1

            def log_message(self, *args):
                pass

        self.server = _QuietServer(("127.0.0.1", 0), Handler)
        self.thread = threading.Thread(target=self.server.serve_forever,
                                       daemon=True)
        self.thread.start()

    @property
    def base_url(self):
        host, port = self.server.server_address
        return f"http://{host}:{port}/v1"

    def enqueue(self, status, body=None):
        """Queue one response; body None means the golden body."""
        self.script.append((status, body))

    def close(self):
        self.server.shutdown()
        self.server.server_close()
