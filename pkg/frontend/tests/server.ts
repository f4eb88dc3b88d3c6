/** Spawns the oversight service for end-to-end tests. */

import { type ChildProcess, spawn } from "node:child_process";
import { mkdtempSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

export interface RunningServer {
  baseUrl: string;
  stop(): void;
}

export async function startServer(port: number): Promise<RunningServer> {
  const storage = mkdtempSync(join(tmpdir(), "caseflow-e2e-"));
  const child: ChildProcess = spawn(
    "python3",
    ["-m", "caseflow.cli", "serve", "--storage", storage, "--port", String(port)],
    { stdio: ["ignore", "pipe", "pipe"] },
  );
  let stderr = "";
  child.stderr?.on("data", (chunk) => (stderr += String(chunk)));

  const baseUrl = `http://127.0.0.1:${port}`;
  const deadline = Date.now() + 30_000;
  while (Date.now() < deadline) {
    if (child.exitCode !== null) {
      throw new Error(`server exited early (${child.exitCode}): ${stderr}`);
    }
    try {
      const response = await fetch(`${baseUrl}/queue`);
      if (response.ok) {
        return { baseUrl, stop: () => child.kill("SIGTERM") };
      }
    } catch {
      // not listening yet
    }
    await new Promise((resolve) => setTimeout(resolve, 150));
  }
  child.kill("SIGTERM");
  throw new Error(`server never became ready: ${stderr}`);
}
