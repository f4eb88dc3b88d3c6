/** Typed client for the oversight HTTP API. The reviewer identifies through
 * the X-Reviewer-Id header; every error body is surfaced, never swallowed. */

import type { CaseJson, DecisionJson, QueueEntryJson, Section } from "./model.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    readonly detail: string,
  ) {
    super(`${code}: ${detail}`);
  }
}

export class NetworkError extends Error {}

async function parseError(response: Response): Promise<ApiError> {
  let code = "http_error";
  let detail = response.statusText;
  try {
    const body = (await response.json()) as { error?: string; detail?: string };
    if (body.error) code = body.error;
    if (body.detail) detail = body.detail;
  } catch {
    // non-JSON error body; keep the status text
  }
  return new ApiError(response.status, code, detail);
}

export class CockpitApi {
  constructor(
    readonly baseUrl: string,
    readonly reviewerId: string,
    private readonly fetchFn: typeof fetch = fetch,
  ) {}

  private async request(path: string, init: RequestInit = {}): Promise<unknown> {
    let response: Response;
    try {
      response = await this.fetchFn(this.baseUrl + path, {
        ...init,
        headers: {
          "Content-Type": "application/json",
          "X-Reviewer-Id": this.reviewerId,
          ...(init.headers ?? {}),
        },
      });
    } catch (cause) {
      throw new NetworkError(`cannot reach ${this.baseUrl}: ${String(cause)}`);
    }
    if (!response.ok) throw await parseError(response);
    return response.json();
  }

  async queue(): Promise<QueueEntryJson[]> {
    const body = (await this.request("/queue")) as { cases: QueueEntryJson[] };
    return body.cases;
  }

  async getCase(caseId: string): Promise<CaseJson> {
    return (await this.request(`/cases/${caseId}`)) as CaseJson;
  }

  async ingestCase(caseBody: unknown): Promise<string> {
    const body = (await this.request("/cases", {
      method: "POST",
      body: JSON.stringify(caseBody),
    })) as { case_id: string };
    return body.case_id;
  }

  async claim(caseId: string): Promise<CaseJson> {
    return (await this.request(`/cases/${caseId}/claim`, { method: "POST" })) as CaseJson;
  }

  async submitEdit(
    caseId: string,
    section: Section,
    before: string,
    after: string,
  ): Promise<CaseJson> {
    return (await this.request(`/cases/${caseId}/edits`, {
      method: "POST",
      body: JSON.stringify({ section, before, after }),
    })) as CaseJson;
  }

  async submitSignificance(caseId: string, section: Section, value: number): Promise<CaseJson> {
    return (await this.request(`/cases/${caseId}/significance`, {
      method: "POST",
      body: JSON.stringify({ section, value }),
    })) as CaseJson;
  }

  async submitDecision(
    caseId: string,
    kind: string,
  ): Promise<{ decision: DecisionJson; outbound_message: string }> {
    return (await this.request(`/cases/${caseId}/decision`, {
      method: "POST",
      body: JSON.stringify({ kind }),
    })) as { decision: DecisionJson; outbound_message: string };
  }

  async audit(caseId: string): Promise<{ kind: string; case_id: string }[]> {
    const body = (await this.request(`/cases/${caseId}/audit`)) as {
      events: { kind: string; case_id: string }[];
    };
    return body.events;
  }
}
