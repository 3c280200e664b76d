import type {
  DistributionsPayload,
  HealthPayload,
  Mode,
  UserDetailPayload,
  UsersPayload,
} from "./types.js";
import type { FilterState } from "./filters.js";
import { filtersParam } from "./filters.js";

export class ApiError extends Error {
  status: number;

  constructor(status: number, message: string) {
    super(message);
    this.name = "ApiError";
    this.status = status;
  }
}

export type FetchLike = (url: string) => Promise<Response>;

/** Thin typed client over the engine HTTP API. All filtering happens
 * server-side; this never post-processes result lists. */
export class ApiClient {
  private base: string;
  private fetchFn: FetchLike;

  constructor(base = "", fetchFn?: FetchLike) {
    this.base = base;
    this.fetchFn = fetchFn ?? ((url) => fetch(url));
  }

  private async getJson<T>(path: string): Promise<T> {
    let resp: Response;
    try {
      resp = await this.fetchFn(this.base + path);
    } catch (err) {
      throw new ApiError(0, `API unreachable: ${String(err)}`);
    }
    let body: unknown = null;
    try {
      body = await resp.json();
    } catch {
      body = null;
    }
    if (!resp.ok) {
      const message =
        body !== null && typeof body === "object" && "error" in body
          ? String((body as { error: unknown }).error)
          : `HTTP ${resp.status}`;
      throw new ApiError(resp.status, message);
    }
    return body as T;
  }

  health(): Promise<HealthPayload> {
    return this.getJson("/api/v1/health");
  }

  distributions(brand: string, mode: Mode): Promise<DistributionsPayload> {
    return this.getJson(
      `/api/v1/brands/${encodeURIComponent(brand)}/distributions?mode=${mode}`,
    );
  }

  /** The `filters=` value comes straight from filtersParam, so the request
   * reflects the FilterState exactly. */
  users(state: FilterState): Promise<UsersPayload> {
    const filters = filtersParam(state);
    const query = filters ? `filters=${filters}&mode=${state.mode}` : `mode=${state.mode}`;
    return this.getJson(
      `/api/v1/brands/${encodeURIComponent(state.brand)}/users?${query}`,
    );
  }

  userDetail(brand: string, userId: string): Promise<UserDetailPayload> {
    return this.getJson(
      `/api/v1/brands/${encodeURIComponent(brand)}/users/${encodeURIComponent(userId)}`,
    );
  }
}
