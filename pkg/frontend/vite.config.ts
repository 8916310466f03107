/// <reference types="vitest/config" />
import { defineConfig } from "vite";

export default defineConfig({
  build: {
    target: "es2020",
  },
  server: {
    proxy: {
      "/api": "http://127.0.0.1:8008",
      "/healthz": "http://127.0.0.1:8008",
    },
  },
  test: {
    environment: "happy-dom",
    environmentOptions: {
      // live.integration.test.ts talks to a real service; making its origin
      // the document URL mirrors the same-origin deployment (service serves
      // the bundle) and satisfies happy-dom's same-origin fetch policy
      happyDOM: { url: process.env.COVARC_API_BASE || "http://localhost/" },
    },
  },
});
